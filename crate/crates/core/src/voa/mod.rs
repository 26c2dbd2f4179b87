//! A symbolic model of the weight `<= 2` part of a lattice VOA.

pub mod cocycle;
pub mod lift;
pub mod sigma;
pub mod vector;
pub mod witness;

pub use cocycle::{build_cocycle, CocycleTable};
pub use lift::{build_lift, LiftedIsometry};
pub use sigma::FrameTriality;
pub use vector::{LowWeightVector, Symbol};
pub use witness::{
    frame_extension, untwisted_witness, witness_all_lines, FrameExtension, WitnessReport,
};
