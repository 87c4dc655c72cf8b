//! Recognition of intersection graphs of unit disks centered on two
//! perpendicular lines, with supporting chordal, interval and circular-ones
//! machinery.

pub mod chordal;
pub mod cliques;
pub mod consecutive;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod interval;
pub mod io;
pub mod layout;
pub mod recognizer;
pub mod structures;
