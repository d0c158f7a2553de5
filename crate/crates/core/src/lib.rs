pub mod action;
pub mod coregpd;
pub mod corpus;
pub mod dbl;
pub mod diagonal;
pub mod dot;
pub mod error;
pub mod factor;
pub mod gen;
pub mod gpd;
pub mod groups;
pub mod io;
pub mod morphism;
pub mod pairs;
pub mod report;
pub mod sim;
pub mod word;
