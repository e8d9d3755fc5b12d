use charp_core::algebra::AlgebraError;
use charp_core::asw::AswError;
use charp_core::curves::CurveError;
use charp_core::embed::EmbedError;
use charp_core::groups::GroupError;
use charp_core::patchsim::PatchError;
use charp_core::witt::WittError;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Machine-readable failure: `kind` names the error variant.
#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub exit: i32,
}

impl CliError {
    pub fn input(kind: &str, message: impl Into<String>) -> CliError {
        CliError { kind: kind.into(), message: message.into(), exit: EXIT_INPUT }
    }
}

fn algebra_kind(e: &AlgebraError) -> &'static str {
    match e {
        AlgebraError::DivisionByZero => "DivisionByZero",
        AlgebraError::FieldMismatch => "FieldMismatch",
        AlgebraError::RingMismatch => "RingMismatch",
        AlgebraError::CompositeP(_) => "CompositeP",
        AlgebraError::InvalidDegree(_) => "InvalidDegree",
        AlgebraError::FieldTooLarge { .. } => "FieldTooLarge",
        AlgebraError::ReducibleModulus => "ReducibleModulus",
        AlgebraError::ElementOutOfRange(_) => "ElementOutOfRange",
        AlgebraError::NotSquarefreeSplit(_) => "NotSquarefreeSplit",
        AlgebraError::NotInRing(_) => "NotInRing",
        AlgebraError::Parse(_) => "Parse",
    }
}

fn witt_kind(e: &WittError) -> &'static str {
    match e {
        WittError::CompositeP(_) => "CompositeP",
        WittError::ZeroLength => "ZeroLength",
        WittError::NonIntegral { .. } => "NonIntegral",
        WittError::LengthMismatch { .. } => "LengthMismatch",
        WittError::RingMismatch => "RingMismatch",
    }
}

fn group_kind(e: &GroupError) -> (&'static str, i32) {
    match e {
        GroupError::OrderCapExceeded { .. } => ("OrderCapExceeded", EXIT_CAP),
        GroupError::CapExceeded(_) => ("CapExceeded", EXIT_CAP),
        GroupError::NotNormal => ("NotNormal", EXIT_INPUT),
        GroupError::NotSubgroup => ("NotSubgroup", EXIT_INPUT),
        GroupError::ActionNotHomomorphic => ("ActionNotHomomorphic", EXIT_INPUT),
        GroupError::NotPGroup(_) => ("NotPGroup", EXIT_INPUT),
        GroupError::InvalidPerm(_) => ("InvalidPerm", EXIT_INPUT),
        GroupError::DegreeMismatch { .. } => ("DegreeMismatch", EXIT_INPUT),
        GroupError::Parse(_) => ("Parse", EXIT_INPUT),
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::input(algebra_kind(&e), e.to_string())
    }
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        CliError::input(witt_kind(&e), e.to_string())
    }
}

impl From<AswError> for CliError {
    fn from(e: AswError) -> Self {
        match e {
            AswError::NotInWindow { .. } => CliError::input("NotInWindow", e.to_string()),
            AswError::Witt(w) => w.into(),
            AswError::Algebra(a) => a.into(),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        let (kind, exit) = group_kind(&e);
        CliError { kind: kind.into(), message: e.to_string(), exit }
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        let kind = match &e {
            EmbedError::Group(g) => return g.clone().into(),
            EmbedError::NotSurjectiveOnGp => "NotSurjectiveOnGp",
            EmbedError::NotMinimalNormal => "NotMinimalNormal",
            EmbedError::NotASection => "NotASection",
            EmbedError::Trichotomy(_) => "Trichotomy",
            EmbedError::NoPunctures => "NoPunctures",
        };
        CliError::input(kind, e.to_string())
    }
}

impl From<PatchError> for CliError {
    fn from(e: PatchError) -> Self {
        let kind = match &e {
            PatchError::Group(g) => return g.clone().into(),
            PatchError::NotAnAction => "NotAnAction",
            PatchError::GroupMismatch => "GroupMismatch",
            PatchError::NotTransitive => "NotTransitive",
        };
        CliError::input(kind, e.to_string())
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        let kind = match &e {
            CurveError::Group(g) => return g.clone().into(),
            CurveError::WildRamification { .. } => "WildRamification",
            CurveError::NonIntegralGenus(_) => "NonIntegralGenus",
            CurveError::InconsistentFiber { .. } => "InconsistentFiber",
            CurveError::CompositeP(_) => "CompositeP",
            CurveError::NotPrimeToP { .. } => "NotPrimeToP",
            CurveError::Overflow => "Overflow",
        };
        CliError::input(kind, e.to_string())
    }
}
