//! Explicit graph families, each with an exact edge-count postcondition.

mod lower_bound;
mod sidon;
mod template;
mod turan;

pub use lower_bound::{basic_construction, improved_construction, Construction};
pub use sidon::{cayley_bipartite, is_sidon, largest_sidon_set, regular_c4free_bipartite, sidon_set};
pub use template::{build_template, template_graph, Piece, TemplateLayout, TemplateSpec};
pub use turan::{chromatic_trivial_value, g_value, turan_count, ConstructionParams};
