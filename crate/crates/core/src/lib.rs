//! Planar group presentations: decorations, crossing of relator words,
//! recognition, enumeration, and checks on finite Cayley graphs.

pub mod presentation;
pub mod registry;
pub mod spin;
pub mod crossing;
pub mod conditions;
pub mod enumeration;
pub mod cayley;
pub mod embedding;
