use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BibError {
    #[error("unbalanced braces starting at byte {offset}")]
    UnbalancedBraces { offset: usize },
    #[error("duplicate citation key `{0}`")]
    DuplicateKey(String),
    #[error("undefined @string macro `{name}` at byte {offset}")]
    UndefinedMacro { name: String, offset: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("name list is empty")]
    EmptyList,
    #[error("empty name at position {position} of the name list")]
    EmptyName { position: usize },
    #[error("name `{0}` has more than two commas")]
    TooManyCommas(String),
    #[error("name `{0}` has no last name")]
    MissingLast(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("unknown name piece `{0}` in format pattern")]
    UnknownPiece(String),
    #[error("nested braces in format pattern")]
    NestedBraces,
    #[error("format pattern group {0} has no name piece")]
    MissingPiece(usize),
    #[error("format pattern group {0} has more than one name piece")]
    ExtraPiece(usize),
    #[error("text outside of brace groups in format pattern")]
    TextOutsideGroup,
    #[error("unclosed brace group in format pattern")]
    Unclosed,
    #[error("format pattern is empty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error(transparent)]
    Names(#[from] NameError),
    #[error("entry `{0}` has no author or editor")]
    NoNames(String),
    #[error("missing year")]
    MissingYear,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StackError {
    #[error("a name stack needs at least one name")]
    Empty,
    #[error("name {0} of the stack is empty")]
    EmptyName(usize),
    #[error("group {0} is empty")]
    EmptyGroup(usize),
    #[error("opacity must lie in (0, 1], got {0}")]
    Opacity(String),
    #[error("overlap depth must be at least 1")]
    ZeroLayers,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("radius must be positive, got {0}")]
    Radius(f64),
    #[error("a circular layout needs at least two names")]
    TooFewNames,
    #[error("point size must be positive, got {0}")]
    Size(f64),
    #[error("metrics line {line}: {message}")]
    Metrics { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("name `{0}` contains an unescaped `;`")]
    SeparatorInName(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Stack(#[from] StackError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}
