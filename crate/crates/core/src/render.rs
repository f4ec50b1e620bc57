//! Output backends: LaTeX source, an HTML grid fragment, SVG, and the plain
//! reveal string.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bib::BibEntry;
use crate::error::RenderError;
use crate::format::{
    entry_authors, entry_details, entry_year, format_full_names, stack_entries, BibOptions,
};
use crate::layout::{stack_bbox_aligned, Align, CircularLayout, FontMetrics};
use crate::stack::{build_stack, GroupedStacks, NameStack, Opacity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Latex,
    Html,
    Svg,
    Text,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "latex" | "tex" => Ok(Backend::Latex),
            "html" => Ok(Backend::Html),
            "svg" => Ok(Backend::Svg),
            "text" | "txt" => Ok(Backend::Text),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub backend: Backend,
    /// Replaces the stack's own opacity.
    pub opacity: Option<Opacity>,
    /// Keep citation hyperlinks off the stacked names so they do not cover
    /// the tooltip; the year stays linked.
    pub disable_name_links: bool,
    pub include_tooltip: bool,
    pub include_actual_text: bool,
    /// Emit the `\vbox` lowering instead of the `\namestack` macro call.
    pub expand: bool,
    /// Wrap HTML in a minimal page.
    pub standalone: bool,
    /// Point size for SVG.
    pub size: f64,
    pub align: Align,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            backend: Backend::Latex,
            opacity: None,
            disable_name_links: true,
            include_tooltip: false,
            include_actual_text: false,
            expand: false,
            standalone: false,
            size: 10.0,
            align: Align::Left,
        }
    }
}

impl RenderOptions {
    fn opacity_for(&self, stack: &NameStack) -> Opacity {
        self.opacity.unwrap_or(stack.opacity())
    }
}

fn has_unescaped_semicolon(name: &str) -> bool {
    let mut escaped = false;
    for c in name.chars() {
        match c {
            ';' if !escaped => return true,
            '\\' => escaped = !escaped,
            _ => escaped = false,
        }
    }
    false
}

/// `\namestack{A; B}` with optional tooltip and ActualText wrappers.
pub fn emit_latex(stack: &NameStack, opts: &RenderOptions) -> Result<String, RenderError> {
    if let Some(name) = stack.names().iter().find(|n| has_unescaped_semicolon(n)) {
        return Err(RenderError::SeparatorInName(name.clone()));
    }
    let opacity = opts.opacity_for(stack);

    let mut out = if opts.expand {
        let mut vbox = String::from("\\vbox{%\n");
        for (i, name) in stack.names().iter().enumerate() {
            if i > 0 {
                vbox.push_str("  \\vskip-\\baselineskip\n");
            }
            writeln!(vbox, "  \\hbox{{{name}}}%").expect("write to String");
        }
        vbox.push_str("}%");
        if opacity.is_default() {
            vbox
        } else {
            format!("\\textopacity{{{}}}{{{vbox}}}", opacity.to_short())
        }
    } else {
        let joined = stack.names().join("; ");
        if opacity.is_default() {
            format!("\\namestack{{{joined}}}")
        } else {
            format!("\\namestack[{}]{{{joined}}}", opacity.to_short())
        }
    };

    if opts.include_actual_text {
        out = format!(
            "\\BeginAccSupp{{method=plain,ActualText={{{}}}}}{out}\\EndAccSupp{{}}",
            stack.actual_text()
        );
    }
    if opts.include_tooltip {
        out = format!("\\pdftooltip{{{out}}}{{{}}}", stack.tooltip_text());
    }
    Ok(out)
}

pub(crate) fn escape_xml(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

const HTML_STYLE: &str = ".stack { display: inline-grid; }\n\
                          .stack > .name { grid-row: 1; grid-column: 1; }\n";

/// A `display: inline-grid` container with every name in the same cell.
pub fn emit_html(stack: &NameStack, opts: &RenderOptions) -> String {
    let fragment = html_fragment(stack, opts);
    if opts.standalone {
        standalone_html(&fragment)
    } else {
        fragment
    }
}

fn html_fragment(stack: &NameStack, opts: &RenderOptions) -> String {
    let opacity = opts.opacity_for(stack).to_fixed3();
    let mut out = format!(
        "<span class=\"stack\" style=\"display: inline-grid\" title=\"{}\">\n",
        escape_xml(stack.tooltip_text())
    );
    for name in stack.names() {
        writeln!(
            out,
            "  <span class=\"name\" style=\"grid-row: 1; grid-column: 1; opacity: {opacity}\">{}</span>",
            escape_xml(name)
        )
        .expect("write to String");
    }
    out.push_str("</span>");
    out
}

fn standalone_html(body: &str) -> String {
    format!(
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\"/>\n<style>\n{HTML_STYLE}</style>\n</head>\n<body>\n{body}\n</body>\n</html>"
    )
}

/// Numbers for SVG attributes: at most three decimals, no trailing zeros.
pub(crate) fn fmt_num(v: f64) -> String {
    let s = format!("{:.3}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

const SVG_NS: &str = "http://www.w3.org/2000/svg";

fn svg_stack_group(
    out: &mut String,
    stack: &NameStack,
    metrics: &FontMetrics,
    opts: &RenderOptions,
    x_offset: f64,
) -> f64 {
    let layout = stack_bbox_aligned(stack.names(), metrics, opts.size, opts.align);
    let opacity = opts.opacity_for(stack).to_fixed3();
    let (x, anchor) = match opts.align {
        Align::Left => (x_offset, ""),
        Align::Center => (
            x_offset + layout.bbox_width / 2.0,
            " text-anchor=\"middle\"",
        ),
    };
    writeln!(
        out,
        "  <g class=\"stack\" font-size=\"{}\">\n    <title>{}</title>",
        fmt_num(opts.size),
        escape_xml(stack.tooltip_text())
    )
    .expect("write to String");
    for name in stack.names() {
        writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\"{anchor} fill-opacity=\"{opacity}\">{}</text>",
            fmt_num(x),
            fmt_num(layout.baseline),
            escape_xml(name)
        )
        .expect("write to String");
    }
    out.push_str("  </g>\n");
    layout.bbox_width
}

fn svg_open(width: f64, height: f64) -> String {
    let (w, h) = (fmt_num(width), fmt_num(height));
    format!("<svg xmlns=\"{SVG_NS}\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n")
}

/// Names superimposed at one anchor; the document is one line tall.
pub fn emit_svg(stack: &NameStack, metrics: &FontMetrics, opts: &RenderOptions) -> String {
    let layout = stack_bbox_aligned(stack.names(), metrics, opts.size, opts.align);
    let mut out = svg_open(layout.bbox_width, layout.bbox_height);
    svg_stack_group(&mut out, stack, metrics, opts, 0.0);
    out.push_str("</svg>");
    out
}

/// Group stacks side by side, one space apart.
pub fn emit_svg_groups(
    groups: &GroupedStacks,
    metrics: &FontMetrics,
    opts: &RenderOptions,
) -> String {
    let gap = crate::layout::measure(" ", metrics, opts.size);
    let mut body = String::new();
    let mut x = 0.0;
    for (i, stack) in groups.stacks().iter().enumerate() {
        if i > 0 {
            x += gap;
        }
        x += svg_stack_group(&mut body, stack, metrics, opts, x);
    }
    let mut out = svg_open(x, metrics.line_height_at(opts.size));
    writeln!(
        out,
        "  <title>{}</title>",
        escape_xml(groups.tooltip_text())
    )
    .expect("write to String");
    out.push_str(&body);
    out.push_str("</svg>");
    out
}

/// Names around a circle. Each text element is rotated about its anchor to
/// follow the tangent; flipped names get a further half turn.
pub fn emit_svg_circle(
    layout: &CircularLayout,
    opacity: Opacity,
    tooltip: &str,
    opts: &RenderOptions,
) -> String {
    let longest = layout
        .placements
        .iter()
        .map(|p| p.width)
        .fold(0.0, f64::max);
    let extent = layout.radius + longest / 2.0 + layout.line_height;
    let size = 2.0 * extent;
    let mut out = svg_open(size, size);
    writeln!(
        out,
        "  <g class=\"circle\" font-size=\"{}\">\n    <title>{}</title>",
        fmt_num(opts.size),
        escape_xml(tooltip)
    )
    .expect("write to String");
    let opacity = opts.opacity.unwrap_or(opacity).to_fixed3();
    for p in &layout.placements {
        let (x, y) = (fmt_num(extent + p.x), fmt_num(extent - p.y));
        // SVG turns clockwise with y pointing down
        let base = 90.0 - p.angle.rem_euclid(360.0);
        let mut transform = format!("rotate({} {x} {y})", fmt_num(base));
        if p.flipped {
            write!(transform, " rotate(180 {x} {y})").expect("write to String");
        }
        writeln!(
            out,
            "    <text x=\"{x}\" y=\"{y}\" text-anchor=\"middle\" fill-opacity=\"{opacity}\" transform=\"{transform}\">{}</text>",
            escape_xml(&p.name)
        )
        .expect("write to String");
    }
    out.push_str("  </g>\n</svg>");
    out
}

/// The copy/paste reveal string.
pub fn emit_text(stack: &NameStack) -> String {
    stack.actual_text().to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CiteMode {
    /// `\citet`: names, then the year in brackets.
    #[default]
    Textual,
    /// `\citep`: names and year together in brackets.
    Parenthetical,
}

impl FromStr for CiteMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "textual" | "t" => Ok(CiteMode::Textual),
            "parenthetical" | "p" => Ok(CiteMode::Parenthetical),
            other => Err(format!("unknown citation mode `{other}`")),
        }
    }
}

/// An author-year citation whose name portion is one stack of every
/// author, never `et al.`.
pub fn emit_citation(
    entry: &BibEntry,
    mode: CiteMode,
    opts: &RenderOptions,
) -> Result<String, RenderError> {
    let list = entry_authors(entry)?;
    let year = entry_year(entry, None)?;
    let stack = match opts.opacity {
        Some(op) if !op.is_default() => format!(
            "\\namestack[{}]{{{}}}",
            op.to_short(),
            format_full_names(&list)
        ),
        _ => format!("\\namestack{{{}}}", format_full_names(&list)),
    };
    let link = |text: &str| format!("\\hyperlink{{cite.{}}}{{{text}}}", entry.key);
    Ok(match (mode, opts.disable_name_links) {
        (CiteMode::Textual, true) => format!("{stack} [{}]", link(year)),
        (CiteMode::Textual, false) => link(&format!("{stack} [{year}]")),
        (CiteMode::Parenthetical, true) => format!("[{stack}, {}]", link(year)),
        (CiteMode::Parenthetical, false) => format!("[{}]", link(&format!("{stack}, {year}"))),
    })
}

/// TeX source to display text: ties become spaces, grouping braces go.
pub fn tex_to_plain(text: &str) -> String {
    text.chars()
        .filter(|c| *c != '{' && *c != '}')
        .map(|c| if c == '~' { ' ' } else { c })
        .collect()
}

/// An HTML bibliography: one list item per entry, names stacked and
/// counted.
pub fn emit_html_bibliography(
    entries: &[BibEntry],
    bib: &BibOptions,
    opts: &RenderOptions,
) -> Result<String, RenderError> {
    if entries.is_empty() {
        return Ok(String::new());
    }
    let mut out = String::from("<ol class=\"bibliography\">\n");
    for entry in entries {
        let list = entry_authors(entry)?;
        let year = entry_year(entry, bib.year_fallback.as_deref())?;
        let names: Vec<String> = stack_entries(&list, &bib.pattern)
            .iter()
            .map(|n| tex_to_plain(n))
            .collect();
        let stack = build_stack(&names, opts.opacity)?;
        let mut item = html_fragment(&stack, opts);
        if bib.count {
            write!(item, " ({})", list.num_names()).expect("write to String");
        }
        writeln!(
            out,
            "<li id=\"{}\">{item}. {}.</li>",
            escape_xml(&entry.key),
            escape_xml(&tex_to_plain(&entry_details(entry, year)))
        )
        .expect("write to String");
    }
    out.push_str("</ol>");
    if opts.standalone {
        out = standalone_html(&out);
    }
    Ok(out)
}
