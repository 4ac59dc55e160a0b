//! Green functions of GL_n and U_n.

pub mod kostka;
pub mod partition;
pub mod poly;
pub mod symmetric;
pub mod table;

pub use kostka::{charge, kostka_foulkes, ssyt};
pub use partition::{partitions, Partition};
pub use poly::IntPoly;
pub use symmetric::sn_character;
pub use table::{
    degree_poly, degree_signed, ennola_sign, green_leading_limit, green_poly, green_poly_gl, green_signed,
    green_value, refine_class, GreenTable, LeadingLimit,
};
