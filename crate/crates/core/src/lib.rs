//! Misère game forms: outcomes, tipping points, universes, comparison modulo
//! the blocking universe, enumeration, and property verification.

pub mod comparison;
pub mod enumeration;
pub mod error;
pub mod forms;
pub mod outcomes;
pub mod population;
pub mod tipping;
pub mod universes;
pub mod verifier;

pub use comparison::{CompareFailure, CompareVerdict, Distinguisher, Empirical, PfreeModulo, ProbeTable};
pub use enumeration::{
    counterexample_search_pfree_sum, counterexample_search_symmetric, enumerate, CounterexampleReport, EnumSpec,
    Filter,
};
pub use error::{Error, Result};
pub use forms::{Arena, Checkpoint, Facts, Form, FormId, DEFAULT_INTEGER_LIMIT};
pub use outcomes::{outcome_geq, Outcome, SideOutcome, Winner};
pub use population::{PairTable, Population};
pub use tipping::{Contiguity, OutcomeSequence, TippingPoints};
pub use universes::UniverseTag;
pub use verifier::{PopulationSpec, PopulationSummary, Suite, SuiteReport, Verifier, Witness};
