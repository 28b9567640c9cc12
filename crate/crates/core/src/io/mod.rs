//! Textual input and output: the expression parser, input documents, reports.

pub mod formats;
pub mod parser;
pub mod report;

pub use formats::{FamilyFile, WeierstrassFile};
pub use parser::{parse_ast, parse_constant, parse_poly, ExprAst};
pub use report::{RunReport, SCHEMA};
