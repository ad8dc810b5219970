pub mod bench;
pub mod design;
pub mod fig1;
pub mod simulate;
pub mod sweep;
