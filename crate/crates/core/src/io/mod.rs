//! Text formats: `.bsys` system files, `.bsysmod` module files and the
//! canonical printer.

mod lexer;
mod parse;
mod print;

pub use parse::{parse_module, parse_system, ParseError, ParseErrorKind};
pub use print::{format_law, format_module_file, format_polynomial, print_canonical};
