pub mod code;
pub mod error;
pub mod field;
pub mod formulas;
pub mod golden;
pub mod limits;
pub mod linalg;
pub mod oracle;
pub mod simplicial;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use limits::Limits;
