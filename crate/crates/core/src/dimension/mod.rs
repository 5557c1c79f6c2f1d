//! C-refinements: verification, the barycentric colouring constructor,
//! bounded exhaustive search and the `μ`-parametric driver.

mod crefinement;
mod driver;
mod ostrand;
mod search;

pub use crefinement::{verify_c_refinement, CRefinement, CViolation};
pub use driver::{mu_driver, mu_driver_with, round_trip, KappaAttempt, Method, MuMode, MuReport, RoundTrip};
pub use ostrand::{dim_oracle, ostrand_refine};
pub use search::{search_c_refinement, search_c_refinement_with, LevelAudit, SearchOutcome};
