pub mod algebra;
pub mod asw;
pub mod curves;
pub mod embed;
pub mod groups;
pub mod par;
pub mod patchsim;
pub mod witt;
