use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The group (or an intermediate construction) would exceed the enumeration cap.
    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: u128, cap: usize },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("no valid action: {0}")]
    NoSuchAction(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element {element} is not a {p}-element")]
    NotPElement { element: usize, p: u64 },
    #[error("family {family} is not supported by tower {tower}")]
    UnsupportedFamily { tower: String, family: String },
    #[error("tower {0} does not have verified centerless factors")]
    UnsupportedTower(String),
    #[error("unknown claim: {0}")]
    UnknownClaim(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
