//! Advance-width metrics and the geometry of stacked and circular name
//! arrangements.
//!
//! Metrics files are plain text:
//!
//! ```text
//! # comment
//! units_per_em 1000
//! default_advance 500
//! line_height 1200
//! 0041 722
//! ```
//!
//! Each glyph line is a bare hexadecimal codepoint and its advance in font
//! units. `line_height` is optional and defaults to 1.2 em.

use std::collections::HashMap;

use crate::error::LayoutError;
use crate::stack::NameStack;

const SERIF: &str = include_str!("../data/serif.metrics");
const UNIFORM: &str = include_str!("../data/uniform.metrics");

#[derive(Debug, Clone, PartialEq)]
pub struct FontMetrics {
    advances: HashMap<char, f64>,
    units_per_em: u32,
    default_advance: f64,
    line_height: f64,
}

impl FontMetrics {
    /// Serif advance widths for printable ASCII and Latin-1.
    pub fn builtin() -> Self {
        Self::parse(SERIF).expect("built-in metrics parse")
    }

    /// Every glyph one unit wide at one unit per em, line height one unit.
    pub fn uniform() -> Self {
        Self::parse(UNIFORM).expect("built-in metrics parse")
    }

    pub fn parse(text: &str) -> Result<Self, LayoutError> {
        let mut advances = HashMap::new();
        let mut units_per_em = None;
        let mut default_advance = None;
        let mut line_height = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| LayoutError::Metrics {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(key), Some(value), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(err(format!("expected two fields, got `{line}`")));
            };
            let number = |v: &str| -> Result<f64, LayoutError> {
                match v.parse::<f64>() {
                    Ok(n) if n.is_finite() && n > 0.0 => Ok(n),
                    _ => Err(err(format!("`{v}` is not a positive number"))),
                }
            };
            match key {
                "units_per_em" => {
                    let n = value
                        .parse::<u32>()
                        .ok()
                        .filter(|n| *n > 0)
                        .ok_or_else(|| err(format!("`{value}` is not a positive integer")))?;
                    units_per_em = Some(n);
                }
                "default_advance" => default_advance = Some(number(value)?),
                "line_height" => line_height = Some(number(value)?),
                hex => {
                    let cp = u32::from_str_radix(hex, 16)
                        .ok()
                        .filter(|_| hex.chars().all(|c| c.is_ascii_hexdigit()))
                        .and_then(char::from_u32)
                        .ok_or_else(|| err(format!("`{hex}` is not a hex codepoint")))?;
                    if advances.insert(cp, number(value)?).is_some() {
                        return Err(err(format!("duplicate codepoint {hex}")));
                    }
                }
            }
        }

        let units_per_em = units_per_em.ok_or(LayoutError::Metrics {
            line: 0,
            message: "missing units_per_em".into(),
        })?;
        let default_advance = default_advance.ok_or(LayoutError::Metrics {
            line: 0,
            message: "missing default_advance".into(),
        })?;
        Ok(Self {
            advances,
            units_per_em,
            default_advance,
            line_height: line_height.unwrap_or(1.2 * f64::from(units_per_em)),
        })
    }

    pub fn units_per_em(&self) -> u32 {
        self.units_per_em
    }

    pub fn advance(&self, c: char) -> f64 {
        self.advances
            .get(&c)
            .copied()
            .unwrap_or(self.default_advance)
    }

    /// Line height in font units.
    pub fn line_height(&self) -> f64 {
        self.line_height
    }

    pub fn with_line_height(mut self, units: f64) -> Self {
        self.line_height = units;
        self
    }

    fn scale(&self, size: f64) -> f64 {
        size / f64::from(self.units_per_em)
    }

    /// Line height at `size` points.
    pub fn line_height_at(&self, size: f64) -> f64 {
        self.line_height * self.scale(size)
    }
}

/// Width of `s` at `size` points.
pub fn measure(s: &str, metrics: &FontMetrics, size: f64) -> f64 {
    let units: f64 = s.chars().map(|c| metrics.advance(c)).sum();
    units * metrics.scale(size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Align {
    #[default]
    Left,
    Center,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NameBox {
    /// Left edge relative to the stack.
    pub x: f64,
    pub width: f64,
    pub height: f64,
}

/// Every name on one shared baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct StackLayout {
    pub boxes: Vec<NameBox>,
    pub bbox_width: f64,
    pub bbox_height: f64,
    /// Baseline measured down from the top of the box.
    pub baseline: f64,
    pub align: Align,
}

pub fn stack_bbox(stack: &NameStack, metrics: &FontMetrics, size: f64) -> StackLayout {
    stack_bbox_aligned(stack.names(), metrics, size, Align::Left)
}

pub fn stack_bbox_aligned<S: AsRef<str>>(
    names: &[S],
    metrics: &FontMetrics,
    size: f64,
    align: Align,
) -> StackLayout {
    let height = metrics.line_height_at(size);
    let widths: Vec<f64> = names
        .iter()
        .map(|n| measure(n.as_ref(), metrics, size))
        .collect();
    let bbox_width = widths.iter().copied().fold(0.0, f64::max);
    let boxes = widths
        .into_iter()
        .map(|width| NameBox {
            x: match align {
                Align::Left => 0.0,
                Align::Center => (bbox_width - width) / 2.0,
            },
            width,
            height,
        })
        .collect();
    StackLayout {
        boxes,
        bbox_width,
        bbox_height: height,
        baseline: 0.8 * height,
        align,
    }
}

/// Lines needed to set `names` one after another in running text.
pub fn flat_line_count<S: AsRef<str>>(
    names: &[S],
    metrics: &FontMetrics,
    size: f64,
    column_width: f64,
) -> usize {
    let text = crate::stack::join_names(names);
    let width = measure(&text, metrics, size);
    ((width / column_width).ceil() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub name: String,
    /// Angle of the anchor on the circle, degrees counterclockwise from +x.
    /// Not reduced modulo 360.
    pub angle: f64,
    /// Anchor relative to the center, y pointing up.
    pub x: f64,
    pub y: f64,
    /// Direction of the baseline, degrees counterclockwise from +x,
    /// including the half turn of flipped names.
    pub rotation: f64,
    pub flipped: bool,
    /// Unit vector from baseline towards the tops of the glyphs.
    pub up: (f64, f64),
    pub width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircularLayout {
    pub radius: f64,
    pub rotation: f64,
    pub placements: Vec<Placement>,
    pub line_height: f64,
}

impl CircularLayout {
    pub fn step(&self) -> f64 {
        360.0 / self.placements.len() as f64
    }
}

fn reduce_degrees(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

/// Sine and cosine of an angle in degrees, exact on the axes.
fn sin_cos_deg(deg: f64) -> (f64, f64) {
    let r = reduce_degrees(deg);
    match r {
        0.0 => (0.0, 1.0),
        90.0 => (1.0, 0.0),
        180.0 => (0.0, -1.0),
        270.0 => (-1.0, 0.0),
        r => r.to_radians().sin_cos(),
    }
}

/// Names spaced evenly around a circle, each running along the clockwise
/// tangent so its top faces outward. With `upright`, names whose tops
/// would point downward are turned a half turn about their anchor.
pub fn circular_layout<S: AsRef<str>>(
    names: &[S],
    radius: f64,
    rotation: f64,
    upright: bool,
    metrics: &FontMetrics,
    size: f64,
) -> Result<CircularLayout, LayoutError> {
    if radius.is_nan() || radius <= 0.0 || radius.is_infinite() {
        return Err(LayoutError::Radius(radius));
    }
    if size.is_nan() || size <= 0.0 {
        return Err(LayoutError::Size(size));
    }
    if names.len() < 2 {
        return Err(LayoutError::TooFewNames);
    }
    let step = 360.0 / names.len() as f64;
    let placements = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let angle = rotation + i as f64 * step;
            let (sin, cos) = sin_cos_deg(angle);
            let flipped = upright && sin < 0.0;
            let sign = if flipped { -1.0 } else { 1.0 };
            let base = reduce_degrees(angle) - 90.0;
            Placement {
                name: name.as_ref().to_string(),
                angle,
                x: radius * cos,
                y: radius * sin,
                rotation: if flipped { base + 180.0 } else { base },
                flipped,
                up: (sign * cos, sign * sin),
                width: measure(name.as_ref(), metrics, size),
            }
        })
        .collect();
    Ok(CircularLayout {
        radius,
        rotation,
        placements,
        line_height: metrics.line_height_at(size),
    })
}
