//! F-stable maximal tori: classes, eigenvalue-slot model, matrix
//! realizations and characters.

mod character;
mod instance;
mod model;

pub use character::{characters, cyclic_subgroup, restrict_character, Restriction, TorusCharacter, CHARACTER_CAP};
pub use instance::{block_generator, TorusInstance};
pub use model::{all_tuples, torus_classes, FactorLevel, FactorTorus, LevelPoint, Torus, TorusClass, TORUS_CAP};
