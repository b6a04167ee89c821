//! Exact arithmetic: finite fields, finite abelian groups, group rings,
//! polynomials, truncated Laurent series and the monic decomposition.

pub mod extfield;
pub mod fq;
pub mod group;
pub mod groupring;
pub mod laurent;
pub mod monic;
pub mod poly;
pub mod ring;

pub use extfield::ExtField;
pub use fq::FqField;
pub use group::{AbelianGroup, SylowSplit};
pub use groupring::{primitive_idempotents, CharacterIdempotent, GroupRing, GroupRingElement};
pub use laurent::Laurent;
pub use monic::{monic_decompose, monic_test};
pub use poly::{FqPoly, PolyRing};
pub use ring::{Ring, UnitRing};

/// `A[G] = F_q[t][G]` as polynomials in `t` over the group ring.
pub type GroupRingPoly = Vec<GroupRingElement>;
