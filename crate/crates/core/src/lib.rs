pub mod dynamics;
pub mod gn;
pub mod groups;
pub mod iet;
pub mod numfield;
pub mod parse;
pub mod perm;
pub mod random;
pub mod saf;
