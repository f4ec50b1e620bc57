//! Name stacks: every author of a work drawn at the same position.
//!
//! The crate parses BibTeX author lists, formats them the way a modified
//! `abbrvnat` style would, and renders stacks as LaTeX, HTML, SVG or plain
//! text.
//!
//! ```
//! use namestack::{build_stack, emit_latex, RenderOptions};
//!
//! let stack = build_stack(&["Erik Demaine", "Martin Demaine"], None).unwrap();
//! assert_eq!(
//!     emit_latex(&stack, &RenderOptions::default()).unwrap(),
//!     r"\namestack{Erik Demaine; Martin Demaine}"
//! );
//! assert_eq!(stack.tooltip_text(), "Erik Demaine and Martin Demaine");
//! ```

pub mod bib;
pub mod cli;
pub mod error;
pub mod format;
pub mod layout;
pub mod render;
pub mod stack;

pub use bib::{parse_bib, parse_name_list, parse_person_name, AuthorList, BibEntry, PersonName};
pub use error::{
    BibError, FormatError, LayoutError, NameError, PatternError, RenderError, StackError,
};
pub use format::{
    calc_label, emit_bbl, emit_bibitem, format_full_names, format_name, format_names,
    format_names_with, parse_pattern, BibOptions, FormatPattern, NamesOptions,
    BIBLIOGRAPHY_PATTERN, LABEL_PATTERN,
};
pub use layout::{
    circular_layout, measure, stack_bbox, Align, CircularLayout, FontMetrics, StackLayout,
};
pub use render::{
    emit_citation, emit_html, emit_html_bibliography, emit_latex, emit_svg, emit_svg_circle,
    emit_text, Backend, CiteMode, RenderOptions,
};
pub use stack::{
    build_stack, effective_alpha, effective_alpha_exact, grouped_stacks, GroupedStacks, NameStack,
    Opacity,
};
