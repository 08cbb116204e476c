//! The 0-1-step layer over a finite base set.
//!
//! Over finite `X` every ultrafilter is principal, so a functor element is a
//! neighbourhood system per modality plus a point of `X`.

mod element;
mod extract;
mod formula;
mod subfunctor;

pub(crate) use element::Layout;
pub use element::FunctorElement;
pub use extract::{check_rule_step01_sound, extract_rule, MAX_EXTRACT_VARS};
pub use formula::{eval_step01, instantiate, Step01Formula, Step01Node};
pub(crate) use subfunctor::valuations_over;
pub use subfunctor::{
    check_step01_sound, decide_step01_derivable, subfunctor_elements, Backend, Step01Check, Step01Context,
    DEFAULT_STEP01_CAP,
};
