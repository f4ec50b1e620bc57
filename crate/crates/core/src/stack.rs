//! The name stack value, its reveal strings, and the overlap model for
//! semi-transparent ink.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::StackError;

/// Ink opacity as an exact fraction in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Opacity(Ratio<u64>);

impl Opacity {
    /// Two thirds.
    pub const DEFAULT: Opacity = Opacity(Ratio::new_raw(2, 3));
    pub const OPAQUE: Opacity = Opacity(Ratio::new_raw(1, 1));

    pub fn from_ratio(numer: u64, denom: u64) -> Result<Self, StackError> {
        if denom == 0 || numer == 0 || numer > denom {
            return Err(StackError::Opacity(format!("{numer}/{denom}")));
        }
        Ok(Opacity(Ratio::new(numer, denom)))
    }

    /// Nearest fraction with denominator at most 10^9.
    pub fn from_f64(value: f64) -> Result<Self, StackError> {
        if !(value > 0.0 && value <= 1.0) {
            return Err(StackError::Opacity(value.to_string()));
        }
        let denom = 1_000_000_000u64;
        let numer = ((value * denom as f64).round() as u64).max(1);
        Self::from_ratio(numer, denom)
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn value(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// Three decimals, truncated: 2/3 is `0.666`.
    pub fn to_fixed3(&self) -> String {
        let thousandths = u128::from(*self.0.numer()) * 1000 / u128::from(*self.0.denom());
        format!("{}.{:03}", thousandths / 1000, thousandths % 1000)
    }

    /// Short form for the `\namestack[...]` argument: `0.5`, `0.666`, `1`.
    pub fn to_short(&self) -> String {
        let fixed = self.to_fixed3();
        fixed
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    }

    /// True when the opacity serializes the same as the default.
    pub fn is_default(&self) -> bool {
        self.to_fixed3() == Self::DEFAULT.to_fixed3()
    }

    fn big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.0.numer()), BigInt::from(*self.0.denom()))
    }
}

impl Default for Opacity {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Opacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_fixed3())
    }
}

impl FromStr for Opacity {
    type Err = StackError;

    /// Accepts decimals (`0.75`, `1`, `.5`) and fractions (`2/3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StackError::Opacity(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse::<u64>().map_err(|_| bad())?;
            let d = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Self::from_ratio(n, d).map_err(|_| bad());
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if (int.is_empty() && frac.is_empty())
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
            || frac.len() > 18
        {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        let denom = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_val: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Self::from_ratio(numer, denom).map_err(|_| bad())
    }
}

/// Alpha of `layers` overlapping coats of ink at `opacity`, composited
/// source-over: `1 - (1 - a)^n`.
pub fn effective_alpha_exact(layers: u32, opacity: Opacity) -> Result<BigRational, StackError> {
    if layers == 0 {
        return Err(StackError::ZeroLayers);
    }
    let clear = BigRational::one() - opacity.big();
    let mut through = BigRational::one();
    for _ in 0..layers {
        through *= &clear;
    }
    Ok(BigRational::one() - through)
}

pub fn effective_alpha(layers: u32, opacity: Opacity) -> Result<f64, StackError> {
    let exact = effective_alpha_exact(layers, opacity)?;
    Ok(exact
        .to_f64()
        .unwrap_or(if exact.is_zero() { 0.0 } else { 1.0 }))
}

/// Names as they would be written in running text: `A`, `A and B`,
/// `A, B, and C`.
pub fn join_names<S: AsRef<str>>(names: &[S]) -> String {
    match names {
        [] => String::new(),
        [one] => one.as_ref().to_string(),
        [a, b] => format!("{} and {}", a.as_ref(), b.as_ref()),
        [init @ .., last] => {
            let mut out = String::new();
            for name in init {
                out.push_str(name.as_ref());
                out.push_str(", ");
            }
            out.push_str("and ");
            out.push_str(last.as_ref());
            out
        }
    }
}

/// Inverse of [`join_names`] for names without `, ` or ` and `.
pub fn split_names(text: &str) -> Vec<String> {
    if text.is_empty() {
        return Vec::new();
    }
    let parts: Vec<&str> = text.split(", ").collect();
    if parts.len() == 1 {
        return match text.split_once(" and ") {
            Some((a, b)) => vec![a.to_string(), b.to_string()],
            None => vec![text.to_string()],
        };
    }
    let (last, init) = parts.split_last().expect("at least two parts");
    let mut names: Vec<String> = init.iter().map(|s| s.to_string()).collect();
    names.push(last.strip_prefix("and ").unwrap_or(last).to_string());
    names
}

/// All names drawn at one position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameStack {
    names: Vec<String>,
    opacity: Opacity,
    tooltip_text: String,
    actual_text: String,
}

impl NameStack {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn opacity(&self) -> Opacity {
        self.opacity
    }

    /// Hover text.
    pub fn tooltip_text(&self) -> &str {
        &self.tooltip_text
    }

    /// Copy/paste replacement text.
    pub fn actual_text(&self) -> &str {
        &self.actual_text
    }

    pub fn with_opacity(mut self, opacity: Opacity) -> Self {
        self.opacity = opacity;
        self
    }
}

pub fn build_stack<S: AsRef<str>>(
    names: &[S],
    opacity: Option<Opacity>,
) -> Result<NameStack, StackError> {
    if names.is_empty() {
        return Err(StackError::Empty);
    }
    if let Some(i) = names.iter().position(|n| n.as_ref().trim().is_empty()) {
        return Err(StackError::EmptyName(i));
    }
    let names: Vec<String> = names.iter().map(|n| n.as_ref().to_string()).collect();
    let reveal = join_names(&names);
    Ok(NameStack {
        names,
        opacity: opacity.unwrap_or_default(),
        tooltip_text: reveal.clone(),
        actual_text: reveal,
    })
}

/// Consecutive stacks, one per group of equal contributors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedStacks {
    stacks: Vec<NameStack>,
    tooltip_text: String,
}

impl GroupedStacks {
    pub fn stacks(&self) -> &[NameStack] {
        &self.stacks
    }

    /// Every author of every group, in the original order.
    pub fn tooltip_text(&self) -> &str {
        &self.tooltip_text
    }

    pub fn actual_text(&self) -> &str {
        &self.tooltip_text
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        self.stacks.iter().map(NameStack::len).collect()
    }

    pub fn flatten(&self) -> Vec<&str> {
        self.stacks
            .iter()
            .flat_map(|s| s.names().iter().map(String::as_str))
            .collect()
    }
}

pub fn grouped_stacks<S: AsRef<str>>(
    groups: &[Vec<S>],
    opacity: Option<Opacity>,
) -> Result<GroupedStacks, StackError> {
    if groups.is_empty() {
        return Err(StackError::Empty);
    }
    let stacks = groups
        .iter()
        .enumerate()
        .map(|(i, g)| match build_stack(g, opacity) {
            Err(StackError::Empty) => Err(StackError::EmptyGroup(i)),
            other => other,
        })
        .collect::<Result<Vec<_>, _>>()?;
    let all: Vec<&str> = stacks
        .iter()
        .flat_map(|s| s.names().iter().map(String::as_str))
        .collect();
    let tooltip_text = join_names(&all);
    Ok(GroupedStacks {
        stacks,
        tooltip_text,
    })
}
