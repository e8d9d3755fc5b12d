//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it, `Exec::Parallel` quietly degrades to a plain loop.
//! Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// `Parallel` when the feature is compiled in, else `Sequential`.
    pub fn best() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// First item (by position) satisfying `pred`.
pub fn find_first<T, F>(exec: Exec, items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_first(|x| pred(x));
    }
    let _ = exec;
    items.iter().find(|x| pred(x))
}

/// First `Some` (by position) produced by `f`.
pub fn find_map_first<T, U, F>(exec: Exec, items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Whether every item satisfies `pred`.
pub fn all<T, F>(exec: Exec, items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().all(pred);
    }
    let _ = exec;
    items.iter().all(pred)
}

/// Run `f` over `0..n` and collect in index order.
pub fn map_range<U, F>(exec: Exec, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let ys = map(exec, &xs, |x| x * x);
            assert_eq!(ys[31], 961);
            assert_eq!(find_first(exec, &xs, |&x| x * x > 500), Some(&23));
            assert!(all(exec, &xs, |&x| x < 1000));
            assert_eq!(find_map_first(exec, &xs, |&x| (x > 40).then_some(x * 2)), Some(82));
            assert_eq!(map_range(exec, 5, |i| i + 1), vec![1, 2, 3, 4, 5]);
        }
    }
}
