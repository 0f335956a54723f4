//! Finite simplicial and bisimplicial sets, with lifting problems, box
//! products, Segal conditions and anodyne certificates.

pub mod acceptance;
pub mod bridge;
pub mod bisset;
pub mod build;
pub mod category;
pub mod colimit;
pub mod corpus;
pub mod error;
pub mod exponential;
pub mod iso;
pub mod json;
pub mod lifting;
pub mod map;
pub mod ops;
pub mod precat;
pub mod presheaf;
pub mod product;
pub mod rewrite;
pub mod search;
pub mod segal;
pub mod shapes;
pub mod transfer;
pub mod verdict;

pub use error::{Error, Result};
pub use map::{BisimplicialMap, Map, SimplicialMap};
pub use ops::Monotone;
pub use presheaf::{BisimplicialSet, Cell, Presheaf, Simplex, SimplicialSet};
