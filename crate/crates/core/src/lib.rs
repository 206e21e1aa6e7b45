//! Faces of the (m-)Catalan and (m-)Shi arrangements, decorated trees and
//! the bijections between them.

pub mod arrangement;
pub mod chain;
pub mod counting;
pub mod error;
pub mod maps;
pub mod oracle;
pub mod tree;
pub mod verify;

pub use arrangement::{
    face_code_of_point, face_dimension, parse_rational, restrict_to_shi, Arrangement, FaceCode,
    Hyperplane, Kind, RationalPoint,
};
pub use error::{Error, ParseError, Result};
pub use tree::{enumerate_trees, parse_tree, render_tree, DecoratedTree, Node, VertexRef};
