pub mod cli;
pub mod construct;
pub mod error;
pub mod form;
pub mod group;
pub mod int;
pub mod lmonoid;
pub mod matrix;
pub mod normal_form;
pub mod oracle;
pub mod samples;
pub mod stableclass;
pub mod subgroup;
pub mod surjection;

pub use error::{Error, Result};
pub use form::{EQForm, FormIso, FormReport, SubgroupClass};
pub use group::{AbGroup, DirectSum, GroupHom};
pub use int::Int;
pub use matrix::IntMatrix;
pub use subgroup::SubgroupRep;
pub use surjection::{match_surjections, MatchMode, SurjectionMatch};
