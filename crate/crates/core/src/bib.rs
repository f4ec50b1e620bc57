//! BibTeX databases and the `First von Last` / `von Last, Jr, First` name
//! grammar.
//!
//! Entries keep their fields in source order. `@string` macros are expanded
//! while parsing, so every stored value is already a plain string with the
//! outer delimiters removed and any inner braces kept.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;

use crate::error::{BibError, NameError};

/// One `@type{key, ...}` record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibEntry {
    pub key: String,
    /// Lowercase entry type, e.g. `article`.
    pub entry_type: String,
    /// Lowercase field name to value, in source order.
    pub fields: IndexMap<String, String>,
    pub year: Option<String>,
}

impl BibEntry {
    pub fn get(&self, field: &str) -> Option<&str> {
        self.fields
            .get(&field.to_ascii_lowercase())
            .map(String::as_str)
    }

    /// The `author` field, falling back to `editor`.
    pub fn names_field(&self) -> Option<&str> {
        self.get("author")
            .or_else(|| self.get("editor"))
            .filter(|v| !v.trim().is_empty())
    }

    pub fn authors(&self) -> Option<Result<AuthorList, NameError>> {
        self.names_field().map(parse_name_list)
    }
}

/// The four name parts of one person. Each part is a list of word tokens;
/// brace groups stay inside a single token.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct PersonName {
    pub first: Vec<String>,
    pub von: Vec<String>,
    pub last: Vec<String>,
    pub jr: Vec<String>,
}

impl fmt::Display for PersonName {
    /// Writes the comma form, which reparses to the same parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let von_last = self
            .von
            .iter()
            .chain(self.last.iter())
            .map(String::as_str)
            .collect::<Vec<_>>()
            .join(" ");
        f.write_str(&von_last)?;
        if !self.jr.is_empty() {
            write!(f, ", {}, {}", self.jr.join(" "), self.first.join(" "))
        } else if !self.first.is_empty() {
            write!(f, ", {}", self.first.join(" "))
        } else if self.last.len() > 1 {
            // without the comma the leading words would read as a first name
            f.write_str(",")
        } else {
            Ok(())
        }
    }
}

/// Authors in source order, plus whether the list ended with `and others`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuthorList {
    pub names: Vec<PersonName>,
    pub ends_with_others: bool,
}

impl AuthorList {
    /// Name count as BibTeX's `num.names$` reports it: `others` is a name.
    pub fn num_names(&self) -> usize {
        self.names.len() + usize::from(self.ends_with_others)
    }
}

impl fmt::Display for AuthorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, name) in self.names.iter().enumerate() {
            if i > 0 {
                f.write_str(" and ")?;
            }
            write!(f, "{name}")?;
        }
        if self.ends_with_others {
            f.write_str(" and others")?;
        }
        Ok(())
    }
}

/// Parses a whole `.bib` database.
pub fn parse_bib(text: &str) -> Result<Vec<BibEntry>, BibError> {
    Parser::new(text).run()
}

/// Splits an `author`/`editor` value on depth-0 `and`.
pub fn parse_name_list(field_value: &str) -> Result<AuthorList, NameError> {
    let words = split_words(field_value, false);
    if words.is_empty() {
        return Err(NameError::EmptyList);
    }

    let mut groups: Vec<Vec<&str>> = vec![Vec::new()];
    for word in words {
        if word.eq_ignore_ascii_case("and") {
            groups.push(Vec::new());
        } else {
            groups.last_mut().expect("non-empty").push(word);
        }
    }

    if let Some(position) = groups.iter().position(Vec::is_empty) {
        return Err(NameError::EmptyName { position });
    }

    let ends_with_others = groups.len() > 1 && groups.last().is_some_and(|g| g == &["others"]);
    if ends_with_others {
        groups.pop();
    }

    let names = groups
        .iter()
        .map(|g| parse_person_name(&g.join(" ")))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(AuthorList {
        names,
        ends_with_others,
    })
}

/// Parses one name in any of the three BibTeX forms.
pub fn parse_person_name(token: &str) -> Result<PersonName, NameError> {
    let parts = split_commas(token);
    if parts.len() > 3 {
        return Err(NameError::TooManyCommas(token.to_string()));
    }
    let parts: Vec<Vec<String>> = parts
        .iter()
        .map(|p| {
            split_words(p, true)
                .into_iter()
                .map(str::to_string)
                .collect()
        })
        .collect();

    let name = match parts.as_slice() {
        [all] => {
            if all.is_empty() {
                return Err(NameError::EmptyName { position: 0 });
            }
            let n = all.len();
            match all[..n - 1].iter().position(|w| is_lowercase_word(w)) {
                Some(start) => {
                    let end = von_run_end(all, start);
                    PersonName {
                        first: all[..start].to_vec(),
                        von: all[start..end].to_vec(),
                        last: all[end..].to_vec(),
                        jr: Vec::new(),
                    }
                }
                None => PersonName {
                    first: all[..n - 1].to_vec(),
                    last: vec![all[n - 1].clone()],
                    ..PersonName::default()
                },
            }
        }
        [von_last, rest @ ..] => {
            if von_last.is_empty() {
                return Err(NameError::MissingLast(token.to_string()));
            }
            let end = if is_lowercase_word(&von_last[0]) {
                von_run_end(von_last, 0)
            } else {
                0
            };
            let (jr, first) = match rest {
                [first] => (Vec::new(), first.clone()),
                [jr, first] => (jr.clone(), first.clone()),
                _ => unreachable!("at most two commas"),
            };
            PersonName {
                first,
                von: von_last[..end].to_vec(),
                last: von_last[end..].to_vec(),
                jr,
            }
        }
        [] => return Err(NameError::EmptyName { position: 0 }),
    };
    Ok(name)
}

/// End of the maximal lowercase run starting at `start`, never swallowing
/// the final token.
fn von_run_end(words: &[String], start: usize) -> usize {
    let mut end = start;
    while end < words.len() - 1 && is_lowercase_word(&words[end]) {
        end += 1;
    }
    end
}

/// A word is lowercase when its first letter is, with braces skipped.
pub(crate) fn is_lowercase_word(word: &str) -> bool {
    word.chars()
        .find(|c| c.is_alphabetic())
        .is_some_and(char::is_lowercase)
}

/// Splits on depth-0 whitespace (and `~` when `ties` is set).
fn split_words(text: &str, ties: bool) -> Vec<&str> {
    let mut words = Vec::new();
    let mut depth = 0usize;
    let mut start = None;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            _ => {}
        }
        let sep = depth == 0 && (c.is_whitespace() || (ties && c == '~'));
        match (sep, start) {
            (true, Some(s)) => {
                words.push(&text[s..i]);
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        words.push(&text[s..]);
    }
    words
}

fn split_commas(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

const MONTHS: [(&str, &str); 12] = [
    ("jan", "January"),
    ("feb", "February"),
    ("mar", "March"),
    ("apr", "April"),
    ("may", "May"),
    ("jun", "June"),
    ("jul", "July"),
    ("aug", "August"),
    ("sep", "September"),
    ("oct", "October"),
    ("nov", "November"),
    ("dec", "December"),
];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    macros: HashMap<String, String>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let macros = MONTHS
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        Self {
            src,
            pos: 0,
            macros,
        }
    }

    fn run(mut self) -> Result<Vec<BibEntry>, BibError> {
        let mut entries: Vec<BibEntry> = Vec::new();
        let mut seen: HashMap<String, ()> = HashMap::new();

        while let Some(at) = self.src[self.pos..].find('@') {
            self.pos += at + 1;
            self.skip_ws();
            let kind = self.ident().to_ascii_lowercase();
            if kind.is_empty() {
                return Err(self.syntax("expected entry type after '@'"));
            }
            self.skip_ws();

            match kind.as_str() {
                "comment" => {
                    if matches!(self.peek(), Some('{') | Some('(')) {
                        self.skip_balanced()?;
                    }
                }
                "preamble" => self.skip_balanced()?,
                "string" => self.string_def()?,
                _ => {
                    let entry = self.entry(kind)?;
                    let folded = entry.key.to_lowercase();
                    if seen.insert(folded, ()).is_some() {
                        return Err(BibError::DuplicateKey(entry.key));
                    }
                    entries.push(entry);
                }
            }
        }
        Ok(entries)
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn syntax(&self, message: &str) -> BibError {
        BibError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !c.is_whitespace() && !"{}(),=#\"@%~'".contains(c))
        {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn open(&mut self) -> Result<char, BibError> {
        match self.bump() {
            Some('{') => Ok('}'),
            Some('(') => Ok(')'),
            _ => Err(self.syntax("expected '{' or '('")),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), BibError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{c}'")))
        }
    }

    /// Skips a `{...}` or `(...)` group, balancing braces inside.
    fn skip_balanced(&mut self) -> Result<(), BibError> {
        let start = self.pos;
        let close = self.open()?;
        let mut depth = 0usize;
        while let Some(c) = self.bump() {
            match c {
                '{' => depth += 1,
                '}' if depth > 0 => depth -= 1,
                c if c == close && depth == 0 => return Ok(()),
                _ => {}
            }
        }
        Err(BibError::UnbalancedBraces { offset: start })
    }

    fn string_def(&mut self) -> Result<(), BibError> {
        let close = self.open()?;
        self.skip_ws();
        let name = self.ident().to_ascii_lowercase();
        if name.is_empty() {
            return Err(self.syntax("expected macro name"));
        }
        self.expect('=')?;
        let value = self.value()?;
        self.expect(close)?;
        self.macros.insert(name, value);
        Ok(())
    }

    fn entry(&mut self, entry_type: String) -> Result<BibEntry, BibError> {
        let open_at = self.pos;
        let close = self.open()?;
        self.skip_ws();
        let key_start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c != ',' && c != close && !c.is_whitespace())
        {
            self.bump();
        }
        let key = self.src[key_start..self.pos].to_string();
        if key.is_empty() {
            return Err(self.syntax("expected citation key"));
        }

        let mut fields = IndexMap::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(c) if c == close => {
                    self.bump();
                    break;
                }
                None => return Err(BibError::UnbalancedBraces { offset: open_at }),
                _ => return Err(self.syntax("expected ',' or end of entry")),
            }
            self.skip_ws();
            if self.peek() == Some(close) {
                self.bump();
                break;
            }
            if self.peek().is_none() {
                return Err(BibError::UnbalancedBraces { offset: open_at });
            }
            let name = self.ident().to_ascii_lowercase();
            if name.is_empty() {
                return Err(self.syntax("expected field name"));
            }
            self.expect('=')?;
            let value = self.value()?;
            fields.insert(name, value);
        }

        let year = fields.get("year").cloned();
        Ok(BibEntry {
            key,
            entry_type,
            fields,
            year,
        })
    }

    /// One value: pieces joined with `#`.
    fn value(&mut self) -> Result<String, BibError> {
        let mut out = String::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('{') => out.push_str(&self.delimited('}')?),
                Some('"') => out.push_str(&self.delimited('"')?),
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.bump();
                    }
                    out.push_str(&self.src[start..self.pos]);
                }
                Some(_) => {
                    let offset = self.pos;
                    let name = self.ident();
                    if name.is_empty() {
                        return Err(self.syntax("expected field value"));
                    }
                    match self.macros.get(&name.to_ascii_lowercase()) {
                        Some(v) => out.push_str(v),
                        None => {
                            return Err(BibError::UndefinedMacro {
                                name: name.to_string(),
                                offset,
                            })
                        }
                    }
                }
                None => return Err(self.syntax("unexpected end of input in value")),
            }
            self.skip_ws();
            if self.peek() == Some('#') {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    /// Reads `{...}` or `"..."` and returns the inner text.
    fn delimited(&mut self, close: char) -> Result<String, BibError> {
        let start = self.pos;
        self.bump();
        let inner = self.pos;
        let mut depth = 0usize;
        while let Some(c) = self.bump() {
            match c {
                '{' => depth += 1,
                '}' if depth == 0 => {
                    if close == '}' {
                        return Ok(self.src[inner..self.pos - 1].to_string());
                    }
                    return Err(BibError::UnbalancedBraces {
                        offset: self.pos - 1,
                    });
                }
                '}' => depth -= 1,
                '"' if close == '"' && depth == 0 => {
                    return Ok(self.src[inner..self.pos - 1].to_string());
                }
                _ => {}
            }
        }
        Err(BibError::UnbalancedBraces { offset: start })
    }
}
