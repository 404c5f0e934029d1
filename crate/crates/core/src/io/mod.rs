//! Graph ingestion and generation.

mod edge_list;
mod matrix_market;
pub mod mesh;
mod rmat;
mod shuffle;

pub use edge_list::{load_edge_list, load_edge_list_declared, write_edge_list};
pub use matrix_market::load_matrix_market;
pub use rmat::{generate_rmat, RmatParams, RmatPreset};
pub use shuffle::{relabel, shuffle_vertices};
