//! Primes, extended integers, finite/cofinite prime sets and finitely
//! excepted functions on `𝒫 ∪ {0}`.

mod ext;
mod func;
mod prime;
mod set;

pub use ext::{ArithError, ExtArith, ExtInt, ExtNat, ParseExtError};
pub use func::{region_keys, regions, Extremum, PointOp, PrimeFn, PrimeMap, Region, Slot, SlotError};
pub use prime::{is_prime, primes_up_to, Prime, PrimeError};
pub use set::{PrimeSet, SetMode, SetOp};
pub use set::parse_prime_list;
