pub mod constructions;
pub mod cyclotomic;
pub mod enumeration;
pub mod frames;
pub mod geometry;
pub mod numfmt;
pub mod oracle;
