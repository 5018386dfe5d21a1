pub mod algnum;
pub mod certifier;
pub mod cli;
pub mod factor;
pub mod factory;
pub mod hondatate;
pub mod modp;
pub mod poly;
pub mod complex;
pub mod resultant;
mod serde_text;
pub mod padic;
pub mod sturm;
pub mod supernat;
