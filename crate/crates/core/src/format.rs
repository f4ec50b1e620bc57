//! Bibliography-style name formatting: brace patterns such as
//! `{f.~}{vv~}{ll}{, jj}`, semicolon-joined name blocks with a count
//! parenthetical, and author-year labels.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bib::{AuthorList, BibEntry, PersonName};
use crate::error::{FormatError, PatternError};

/// Pattern used for names in bibliography entries.
pub const BIBLIOGRAPHY_PATTERN: &str = "{f.~}{vv~}{ll}{, jj}";
/// Pattern used for citation labels.
pub const LABEL_PATTERN: &str = "{vv }{ll}";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Piece {
    First,
    Von,
    Last,
    Jr,
}

impl Piece {
    fn words<'a>(&self, name: &'a PersonName) -> &'a [String] {
        match self {
            Piece::First => &name.first,
            Piece::Von => &name.von,
            Piece::Last => &name.last,
            Piece::Jr => &name.jr,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub piece: Piece,
    /// Single piece letter: initials only.
    pub abbreviate: bool,
    pub pre_text: String,
    /// Text after the piece. For abbreviated pieces the `.` that marks the
    /// abbreviation has already been taken off.
    pub post_text: String,
    /// Words of the piece are joined by `~` instead of a space.
    pub tie: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatPattern {
    pub segments: Vec<Segment>,
}

impl FromStr for FormatPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

pub fn parse_pattern(spec: &str) -> Result<FormatPattern, PatternError> {
    let mut segments = Vec::new();
    let mut rest = spec;
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(PatternError::TextOutsideGroup);
        };
        let end = body.find('}').ok_or(PatternError::Unclosed)?;
        let group = &body[..end];
        if group.contains('{') {
            return Err(PatternError::NestedBraces);
        }
        segments.push(parse_group(group, segments.len())?);
        rest = &body[end + 1..];
    }
    if segments.is_empty() {
        return Err(PatternError::Empty);
    }
    Ok(FormatPattern { segments })
}

fn parse_group(group: &str, index: usize) -> Result<Segment, PatternError> {
    let letters_at = group
        .find(|c: char| c.is_alphabetic())
        .ok_or(PatternError::MissingPiece(index))?;
    let pre_text = &group[..letters_at];
    let after = &group[letters_at..];
    let letters_len = after
        .find(|c: char| !c.is_alphabetic())
        .unwrap_or(after.len());
    let letters = &after[..letters_len];
    let mut post = &after[letters_len..];
    if post.contains(|c: char| c.is_alphabetic()) {
        return Err(PatternError::ExtraPiece(index));
    }

    let (piece, abbreviate) = match letters {
        "f" => (Piece::First, true),
        "ff" => (Piece::First, false),
        "v" => (Piece::Von, true),
        "vv" => (Piece::Von, false),
        "l" => (Piece::Last, true),
        "ll" => (Piece::Last, false),
        "j" => (Piece::Jr, true),
        "jj" => (Piece::Jr, false),
        other => return Err(PatternError::UnknownPiece(other.to_string())),
    };
    if abbreviate {
        post = post.strip_prefix('.').unwrap_or(post);
    }

    Ok(Segment {
        piece,
        abbreviate,
        pre_text: pre_text.to_string(),
        post_text: post.to_string(),
        tie: post.contains('~'),
    })
}

/// Formats one name. Empty parts drop their whole segment.
pub fn format_name(name: &PersonName, pattern: &FormatPattern) -> String {
    let mut out = String::new();
    for seg in &pattern.segments {
        let words = seg.piece.words(name);
        if words.is_empty() {
            continue;
        }
        let joiner = if seg.tie { "~" } else { " " };
        out.push_str(&seg.pre_text);
        for (i, word) in words.iter().enumerate() {
            if i > 0 {
                out.push_str(joiner);
            }
            if seg.abbreviate {
                out.push_str(&abbreviate(word));
            } else {
                out.push_str(word);
            }
        }
        out.push_str(&seg.post_text);
    }
    out
}

/// `Yu-Hui` becomes `Y.-H.`; a leading brace group is kept whole.
pub(crate) fn abbreviate(word: &str) -> String {
    let initials: Vec<String> = split_hyphens(word)
        .into_iter()
        .filter(|part| !part.is_empty())
        .map(leading_letter)
        .collect();
    format!("{}.", initials.join(".-"))
}

fn split_hyphens(word: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in word.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            '-' if depth == 0 => {
                parts.push(&word[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&word[start..]);
    parts
}

fn leading_letter(word: &str) -> String {
    if word.starts_with('{') {
        let mut depth = 0usize;
        for (i, c) in word.char_indices() {
            match c {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        return word[..=i].to_string();
                    }
                }
                _ => {}
            }
        }
        return word.to_string();
    }
    let mut chars = word.char_indices();
    match chars.next() {
        Some((_, '\\')) => {
            // control sequence plus the letter it applies to, e.g. \'E
            let rest = &word[1..];
            if rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
                // letter-like command such as \AA or \o
                let len = rest
                    .find(|c: char| !c.is_ascii_alphabetic())
                    .unwrap_or(rest.len());
                return word[..1 + len].to_string();
            }
            let cmd_len = rest.chars().next().map_or(0, char::len_utf8);
            let after = &rest[cmd_len..];
            let letter = after.chars().next().map_or(0, char::len_utf8);
            word[..1 + cmd_len + letter].to_string()
        }
        Some((_, c)) => c.to_string(),
        None => String::new(),
    }
}

/// Options for the bibliography name block.
#[derive(Debug, Clone)]
pub struct NamesOptions {
    /// Append ` (N)` after the stack.
    pub count: bool,
}

impl Default for NamesOptions {
    fn default() -> Self {
        Self { count: true }
    }
}

/// Names for the stack, one string per slot; `others` turns into an
/// ` et~al.` suffix on the last name.
pub fn stack_entries(list: &AuthorList, pattern: &FormatPattern) -> Vec<String> {
    let mut names: Vec<String> = list.names.iter().map(|n| format_name(n, pattern)).collect();
    if list.ends_with_others {
        if let Some(last) = names.last_mut() {
            last.push_str(" et~al.");
        }
    }
    names
}

/// `\namestack{A; B et~al.} (N)`.
pub fn format_names(list: &AuthorList, pattern: &FormatPattern) -> String {
    format_names_with(list, pattern, &NamesOptions::default())
}

pub fn format_names_with(
    list: &AuthorList,
    pattern: &FormatPattern,
    opts: &NamesOptions,
) -> String {
    let mut out = format!("\\namestack{{{}}}", stack_entries(list, pattern).join("; "));
    if opts.count {
        write!(out, " ({})", list.num_names()).expect("write to String");
    }
    out
}

/// von and last parts joined by `; `. A trailing `others` is listed
/// literally.
pub fn format_full_names(list: &AuthorList) -> String {
    let pattern = label_pattern();
    let mut parts: Vec<String> = list
        .names
        .iter()
        .map(|n| format_name(n, &pattern))
        .collect();
    if list.ends_with_others {
        parts.push("others".to_string());
    }
    parts.join("; ")
}

pub fn calc_label(list: &AuthorList, year: &str) -> Result<String, FormatError> {
    if year.is_empty() {
        return Err(FormatError::MissingYear);
    }
    Ok(format!("{}({})", format_full_names(list), year))
}

pub(crate) fn label_pattern() -> FormatPattern {
    parse_pattern(LABEL_PATTERN).expect("valid built-in pattern")
}

pub(crate) fn bibliography_pattern() -> FormatPattern {
    parse_pattern(BIBLIOGRAPHY_PATTERN).expect("valid built-in pattern")
}

#[derive(Debug, Clone)]
pub struct BibOptions {
    pub pattern: FormatPattern,
    pub count: bool,
    /// Substituted when an entry has no `year`.
    pub year_fallback: Option<String>,
}

impl Default for BibOptions {
    fn default() -> Self {
        Self {
            pattern: bibliography_pattern(),
            count: true,
            year_fallback: None,
        }
    }
}

/// Label year for an entry, applying the fallback.
pub fn entry_year<'a>(
    entry: &'a BibEntry,
    fallback: Option<&'a str>,
) -> Result<&'a str, FormatError> {
    entry
        .year
        .as_deref()
        .filter(|y| !y.trim().is_empty())
        .or(fallback)
        .ok_or(FormatError::MissingYear)
}

pub fn entry_authors(entry: &BibEntry) -> Result<AuthorList, FormatError> {
    match entry.authors() {
        Some(list) => Ok(list?),
        None => Err(FormatError::NoNames(entry.key.clone())),
    }
}

/// Title, venue and year of an entry, comma separated.
pub fn entry_details(entry: &BibEntry, year: &str) -> String {
    let venue = ["journal", "booktitle", "publisher", "school", "institution"]
        .iter()
        .find_map(|f| entry.get(f));
    [entry.get("title"), venue, Some(year)]
        .into_iter()
        .flatten()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `\bibitem[LABEL]{KEY}` followed by the entry body.
pub fn emit_bibitem(entry: &BibEntry, opts: &BibOptions) -> Result<String, FormatError> {
    let list = entry_authors(entry)?;
    let year = entry_year(entry, opts.year_fallback.as_deref())?;
    let label = calc_label(&list, year)?;
    let names = format_names_with(&list, &opts.pattern, &NamesOptions { count: opts.count });
    Ok(format!(
        "\\bibitem[{label}]{{{key}}}\n{names}.\n\\newblock {details}.\n",
        key = entry.key,
        details = entry_details(entry, year),
    ))
}

/// A whole `thebibliography` environment; empty input gives empty output.
pub fn emit_bbl(entries: &[BibEntry], opts: &BibOptions) -> Result<String, FormatError> {
    if entries.is_empty() {
        return Ok(String::new());
    }
    let mut out = format!("\\begin{{thebibliography}}{{{}}}\n", entries.len());
    for entry in entries {
        out.push('\n');
        out.push_str(&emit_bibitem(entry, opts)?);
    }
    out.push_str("\n\\end{thebibliography}\n");
    Ok(out)
}
