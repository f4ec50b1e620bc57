//! Reference implementations used only by tests. None of this goes through
//! the crate's pattern machinery or alpha algebra.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

/// Ground-truth name parts for generated authors.
#[derive(Debug, Clone, PartialEq)]
pub struct Parts {
    pub first: Vec<String>,
    pub von: Vec<String>,
    pub last: Vec<String>,
    pub jr: Vec<String>,
}

impl Parts {
    /// A BibTeX spelling of the name, in one of the three forms.
    pub fn bibtex(&self, form: u8) -> String {
        let von_last = self
            .von
            .iter()
            .chain(&self.last)
            .cloned()
            .collect::<Vec<_>>()
            .join(" ");
        if !self.jr.is_empty() {
            return format!(
                "{von_last}, {}, {}",
                self.jr.join(" "),
                self.first.join(" ")
            );
        }
        let first_form_ok = self.last.len() == 1 || !self.von.is_empty();
        if form == 0 && first_form_ok && !self.first.is_empty() {
            format!("{} {von_last}", self.first.join(" "))
        } else if self.first.is_empty() && first_form_ok {
            von_last
        } else if self.first.is_empty() {
            format!("{von_last},")
        } else {
            format!("{von_last}, {}", self.first.join(" "))
        }
    }
}

const FIRSTS: &[&str] = &[
    "Erik", "Martin", "Yu-Hui", "J.", "Anna", "Craig", "Mark", "Eun", "Zhu", "Mary-Ann", "Li",
];
const VONS: &[&str] = &["van", "der", "de", "la", "von", "di", "du"];
const LASTS: &[&str] = &[
    "Demaine", "Venter", "Adams", "Berg", "Fontaine", "Smith", "Ku", "Lynch", "Ochoa", "Zhang",
];
const JRS: &[&str] = &["Jr.", "III", "Sr."];

pub fn random_parts<R: Rng>(rng: &mut R) -> Parts {
    let pick = |rng: &mut R, pool: &[&str], n: usize| -> Vec<String> {
        (0..n)
            .map(|_| pool.choose(rng).expect("non-empty pool").to_string())
            .collect()
    };
    let n_first = rng.gen_range(0..=3);
    let n_von = if rng.gen_bool(0.3) {
        rng.gen_range(1..=2)
    } else {
        0
    };
    let n_last = if rng.gen_bool(0.2) { 2 } else { 1 };
    let n_jr = usize::from(rng.gen_bool(0.15));
    Parts {
        first: pick(rng, FIRSTS, n_first),
        von: pick(rng, VONS, n_von),
        last: pick(rng, LASTS, n_last),
        jr: pick(rng, JRS, n_jr),
    }
}

/// A random author list: (parts, ends with others, bibtex author field).
pub fn random_list<R: Rng>(rng: &mut R, len: usize) -> (Vec<Parts>, bool, String) {
    let parts: Vec<Parts> = (0..len).map(|_| random_parts(rng)).collect();
    let others = len > 1 && rng.gen_bool(0.25);
    let mut field = parts
        .iter()
        .map(|p| p.bibtex(rng.gen_range(0..2)))
        .collect::<Vec<_>>()
        .join(" and ");
    if others {
        field.push_str(" and others");
    }
    (parts, others, field)
}

/// `format.name$` with `{f.~}{vv~}{ll}{, jj}`, written out by hand.
pub fn bst_long_name(p: &Parts) -> String {
    let mut t = String::new();
    if !p.first.is_empty() {
        for (i, w) in p.first.iter().enumerate() {
            if i > 0 {
                t += "~";
            }
            let initials: Vec<String> = w
                .split('-')
                .map(|part| part.chars().next().unwrap().to_string())
                .collect();
            t += &initials.join(".-");
            t += ".";
        }
        t += "~";
    }
    if !p.von.is_empty() {
        t += &p.von.join("~");
        t += "~";
    }
    t += &p.last.join(" ");
    if !p.jr.is_empty() {
        t += ", ";
        t += &p.jr.join(" ");
    }
    t
}

/// `format.name$` with `{vv }{ll}`.
pub fn bst_short_name(p: &Parts) -> String {
    let mut t = String::new();
    if !p.von.is_empty() {
        t += &p.von.join(" ");
        t += " ";
    }
    t += &p.last.join(" ");
    t
}

/// A name slot as `num.names$` sees it.
pub enum Slot<'a> {
    Name(&'a Parts),
    Others,
}

fn slots(parts: &[Parts], others: bool) -> Vec<Slot<'_>> {
    let mut s: Vec<Slot> = parts.iter().map(Slot::Name).collect();
    if others {
        s.push(Slot::Others);
    }
    s
}

/// FUNCTION {format.names}, loop for loop.
pub fn bst_format_names(parts: &[Parts], others: bool) -> String {
    let s = slots(parts, others);
    let mut nameptr = 1;
    let numnames = s.len();
    let mut namesleft = numnames;
    let mut acc = String::new();
    while namesleft > 0 {
        let t = match &s[nameptr - 1] {
            Slot::Name(p) => bst_long_name(p),
            Slot::Others => "others".to_string(),
        };
        if nameptr > 1 {
            if namesleft > 1 {
                acc = acc + "; " + &t;
            } else if t == "others" {
                acc += " et~al.";
            } else {
                acc = acc + "; " + &t;
            }
        } else {
            acc = t;
        }
        nameptr += 1;
        namesleft -= 1;
    }
    acc = "\\namestack{".to_string() + &acc + "}";
    acc + " (" + &numnames.to_string() + ")"
}

/// FUNCTION {format.full.names}.
pub fn bst_format_full_names(parts: &[Parts], others: bool) -> String {
    let s = slots(parts, others);
    let mut nameptr = 1;
    let mut namesleft = s.len();
    let mut acc = String::new();
    while namesleft > 0 {
        let t = match &s[nameptr - 1] {
            Slot::Name(p) => bst_short_name(p),
            Slot::Others => "others".to_string(),
        };
        if nameptr > 1 {
            acc = acc + "; " + &t;
        } else {
            acc = t;
        }
        nameptr += 1;
        namesleft -= 1;
    }
    acc
}

/// FUNCTION {calc.label}.
pub fn bst_calc_label(parts: &[Parts], others: bool, year: &str) -> String {
    bst_format_full_names(parts, others) + "(" + year + ")"
}

/// Straight-alpha RGBA canvas with float channels.
pub struct Canvas {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[f64; 4]>,
}

impl Canvas {
    pub fn new(width: usize, height: usize, background: [f64; 4]) -> Self {
        Self {
            width,
            height,
            pixels: vec![background; width * height],
        }
    }

    /// Paints a solid rectangle with the source-over operator.
    pub fn fill_rect(&mut self, x0: usize, y0: usize, x1: usize, y1: usize, color: [f64; 4]) {
        for y in y0..y1 {
            for x in x0..x1 {
                let dst = self.pixels[y * self.width + x];
                let sa = color[3];
                let da = dst[3];
                let out_a = sa + da * (1.0 - sa);
                let mut out = [0.0, 0.0, 0.0, out_a];
                for c in 0..3 {
                    out[c] = if out_a == 0.0 {
                        0.0
                    } else {
                        (color[c] * sa + dst[c] * da * (1.0 - sa)) / out_a
                    };
                }
                self.pixels[y * self.width + x] = out;
            }
        }
    }

    pub fn at(&self, x: usize, y: usize) -> [f64; 4] {
        self.pixels[y * self.width + x]
    }
}

/// Same compositing on 8-bit premultiplied channels, rounding each step.
pub struct Canvas8 {
    pub width: usize,
    pub pixels: Vec<[u8; 4]>,
}

impl Canvas8 {
    pub fn new(width: usize, height: usize, background: [u8; 4]) -> Self {
        Self {
            width,
            pixels: vec![background; width * height],
        }
    }

    pub fn fill_rect(&mut self, x0: usize, y0: usize, x1: usize, y1: usize, color: [u8; 4]) {
        let sa = u32::from(color[3]);
        for y in y0..y1 {
            for x in x0..x1 {
                let dst = &mut self.pixels[y * self.width + x];
                for c in 0..4 {
                    let src = if c == 3 {
                        sa
                    } else {
                        (u32::from(color[c]) * sa + 127) / 255
                    };
                    let d = u32::from(dst[c]);
                    dst[c] = (src + (d * (255 - sa) + 127) / 255) as u8;
                }
            }
        }
    }

    pub fn at(&self, x: usize, y: usize) -> [u8; 4] {
        self.pixels[y * self.width + x]
    }
}

/// Alpha where `layers` overlapping black rectangles at `alpha` cover a
/// transparent canvas, plus the gray level they leave on white paper.
pub fn raster_overlap(layers: usize, alpha: f64) -> (f64, f64) {
    let mut clear = Canvas::new(8, 8, [0.0; 4]);
    let mut paper = Canvas::new(8, 8, [1.0, 1.0, 1.0, 1.0]);
    for i in 0..layers {
        clear.fill_rect(i, 0, i + 4, 4, [0.0, 0.0, 0.0, alpha]);
        paper.fill_rect(i, 0, i + 4, 4, [0.0, 0.0, 0.0, alpha]);
    }
    // every rectangle covers column `layers - 1`
    let x = layers - 1;
    (clear.at(x, 1)[3], paper.at(x, 1)[0])
}

pub fn raster_overlap_u8(layers: usize, alpha: f64) -> (f64, f64) {
    let a = (alpha * 255.0).round() as u8;
    let mut clear = Canvas8::new(8, 8, [0; 4]);
    let mut paper = Canvas8::new(8, 8, [255; 4]);
    for i in 0..layers {
        clear.fill_rect(i, 0, i + 4, 4, [0, 0, 0, a]);
        paper.fill_rect(i, 0, i + 4, 4, [0, 0, 0, a]);
    }
    let x = layers - 1;
    (
        f64::from(clear.at(x, 1)[3]) / 255.0,
        f64::from(paper.at(x, 1)[0]) / 255.0,
    )
}
