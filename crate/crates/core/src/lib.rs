pub mod algebra;
pub mod cli;
pub mod complete;
pub mod compose;
pub mod context;
pub mod enumerate;
pub mod error;
pub mod order;
pub mod par;
pub mod reduce;
pub mod verify;
pub mod embed;
