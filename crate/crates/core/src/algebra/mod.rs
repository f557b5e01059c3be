//! Finite groups, biquandles, parallel operations and `G`-families.

mod alexander;
mod biquandle;
mod gfamily;
mod group;

pub use alexander::{make_alexander_gfamily, make_generalized_alexander_gfamily, AlexanderFamily, ZnModule, ZnPoint};
pub use biquandle::{BiquandleTables, FinBiquandle, Side, MAX_TABLE_ENTRIES};
pub use gfamily::GFamily;
pub use group::{FinGroup, GroupHom, Sl2};

pub(crate) use biquandle::column_inverse;
