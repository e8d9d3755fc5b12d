use charp_core::algebra::descriptor::{parse_elem, parse_ring};
use charp_core::algebra::{CoordinateRing, Fq, Mode, RingElem};
use proptest::prelude::*;

const FIELDS: [(u64, u32); 9] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (13, 1)];

#[test]
fn field_axioms_and_frobenius_root_up_to_16() {
    for (p, m) in FIELDS {
        let f = Fq::new(p, m).unwrap();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len() as u32, f.q());
        for &a in &els {
            assert_eq!(f.frobenius_root(f.frobenius(a)), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }
}

fn ring_strategy() -> impl Strategy<Value = CoordinateRing> {
    prop::sample::select(vec!["F(2,1)[x,1/x]", "F(3,1)[x,1/(x*(x-1))]", "F(2,2)[x,1/(x*(x-1))]", "F(5,1)[x,1/(x*(x-2)*(x-4))]", "F(7,1)[x]"])
        .prop_map(|d| parse_ring(d, Mode::Geometric).unwrap())
}

fn elem(ring: &CoordinateRing, coeffs: &[u32]) -> RingElem {
    let f = ring.fq();
    let mut e = ring.zero();
    let mut it = coeffs.iter().map(|&c| f.from_index(c % f.q()).unwrap());
    e = ring.add(&e, &ring.constant(it.next().unwrap()));
    for j in 1..=3 {
        e = ring.add(&e, &ring.monomial(it.next().unwrap(), j));
        for i in 0..ring.s() {
            e = ring.add(&e, &ring.pole_monomial(it.next().unwrap(), i, j as u32));
        }
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalization_is_idempotent_and_compatible(ring in ring_strategy(), a in prop::collection::vec(0u32..64, 16), b in prop::collection::vec(0u32..64, 16)) {
        let (x, y) = (elem(&ring, &a), elem(&ring, &b));
        prop_assert_eq!(ring.normalize(&x), x.clone());
        // an unreduced representative num * h / h^{k+1} normalizes back
        let raw = ring.raw(x.num().mul(ring.h(), ring.fq()), x.k() + 1);
        prop_assert_eq!(ring.normalize(&raw), x.clone());
        let sum = ring.add(&x, &y);
        prop_assert_eq!(ring.normalize(&sum), sum.clone());
        prop_assert_eq!(ring.add(&ring.normalize(&raw), &y), sum);
        prop_assert_eq!(ring.mul(&x, &ring.add(&y, &ring.one())), ring.add(&ring.mul(&x, &y), &x));
        prop_assert_eq!(ring.frobenius(&ring.add(&x, &y)), ring.add(&ring.frobenius(&x), &ring.frobenius(&y)));
    }

    #[test]
    fn partial_fractions_roundtrip(ring in ring_strategy(), a in prop::collection::vec(0u32..64, 16)) {
        let x = elem(&ring, &a);
        prop_assert_eq!(ring.from_partial_fractions(&ring.partial_fractions(&x)), x);
    }

    #[test]
    fn format_parses_back(ring in ring_strategy(), a in prop::collection::vec(0u32..64, 16)) {
        let x = elem(&ring, &a);
        prop_assert_eq!(parse_elem(&ring.format(&x), &ring).unwrap(), x);
    }
}
