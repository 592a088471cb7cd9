pub mod interp;
pub mod optimize;
pub mod series;
pub mod table;
