pub mod complexes;
pub mod doldkan;
pub mod hocolim;
pub mod homalg;
pub mod symprod;
