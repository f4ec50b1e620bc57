//! Command-line front end. [`run`] takes its streams as arguments so the
//! binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 input or parse failure, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bib::parse_bib;
use crate::format::{
    emit_bbl, parse_pattern, stack_entries, BibOptions, FormatPattern, BIBLIOGRAPHY_PATTERN,
    LABEL_PATTERN,
};
use crate::layout::{circular_layout, stack_bbox_aligned, Align, FontMetrics};
use crate::render::{
    emit_citation, emit_html, emit_html_bibliography, emit_latex, emit_svg, emit_svg_circle,
    emit_svg_groups, emit_text, fmt_num, tex_to_plain, Backend, CiteMode, RenderOptions,
};
use crate::stack::{build_stack, effective_alpha, grouped_stacks, NameStack, Opacity};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "namestack",
    version,
    about = "Superimpose author names into name stacks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render one stack (or several groups) from names on the command line.
    Stack(StackArgs),
    /// Turn a .bib database into a stacked bibliography.
    Bib(BibArgs),
    /// Emit author-year citations with stacked names.
    Cite(CiteArgs),
    /// Report geometry and overlap alpha for stacks.
    Inspect(InspectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Latex,
    Html,
    Svg,
    Text,
}

impl From<FormatArg> for Backend {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Latex => Backend::Latex,
            FormatArg::Html => Backend::Html,
            FormatArg::Svg => Backend::Svg,
            FormatArg::Text => Backend::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BibFormatArg {
    Latex,
    Html,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Textual,
    Parenthetical,
}

fn parse_opacity(s: &str) -> Result<Opacity, String> {
    s.parse::<Opacity>().map_err(|e| e.to_string())
}

fn parse_fmt_pattern(s: &str) -> Result<FormatPattern, String> {
    parse_pattern(s).map_err(|e| e.to_string())
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Write here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Ink opacity in (0, 1], as a decimal or a fraction like 2/3.
    #[arg(long, value_parser = parse_opacity)]
    pub opacity: Option<Opacity>,
    /// Metrics: `builtin`, `uniform`, or a metrics file.
    #[arg(long, env = "NAMESTACK_METRICS")]
    pub metrics: Option<String>,
    /// Point size for geometry.
    #[arg(long, value_parser = parse_positive)]
    pub size: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StackArgs {
    /// Names, or a single `-` to read one name per line from stdin.
    pub names: Vec<String>,
    #[arg(short, long, value_enum, default_value = "latex")]
    pub format: FormatArg,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Each argument is one group of `;`-separated names.
    #[arg(long)]
    pub grouped: bool,
    /// LaTeX: emit the \vbox lowering of the macro.
    #[arg(long)]
    pub expand: bool,
    /// LaTeX: wrap in \pdftooltip.
    #[arg(long)]
    pub tooltip: bool,
    /// LaTeX: wrap in \BeginAccSupp ActualText.
    #[arg(long)]
    pub actual_text: bool,
    /// HTML: emit a full page.
    #[arg(long)]
    pub standalone: bool,
    /// Center names in the stack instead of sharing the left edge.
    #[arg(long)]
    pub center: bool,
    /// SVG: arrange names around a circle.
    #[arg(long)]
    pub circle: bool,
    #[arg(long, default_value_t = 50.0)]
    pub radius: f64,
    /// Degrees counterclockwise of the first name.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub rotate: f64,
    /// Turn names on the lower half of the circle right side up.
    #[arg(long)]
    pub upright: bool,
}

#[derive(Debug, Args)]
pub struct BibArgs {
    /// .bib file, or `-` for stdin.
    pub input: String,
    #[arg(short, long, value_enum, default_value = "latex")]
    pub format: BibFormatArg,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Name pattern in BibTeX `format.name$` syntax.
    #[arg(long, value_parser = parse_fmt_pattern, default_value = BIBLIOGRAPHY_PATTERN)]
    pub pattern: FormatPattern,
    /// Leave out the `(N)` name count.
    #[arg(long)]
    pub no_count: bool,
    /// Year used when an entry has none.
    #[arg(long)]
    pub year_fallback: Option<String>,
    /// HTML: emit a full page.
    #[arg(long)]
    pub standalone: bool,
}

#[derive(Debug, Args)]
pub struct CiteArgs {
    /// .bib file, or `-` for stdin.
    pub input: String,
    /// Keys to cite; all entries when omitted.
    pub keys: Vec<String>,
    #[arg(long, value_enum, default_value = "textual")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Let the hyperlink cover the names too.
    #[arg(long)]
    pub link_names: bool,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    /// Names of one stack, or `-` for stdin.
    pub names: Vec<String>,
    /// Inspect every entry of a .bib file instead.
    #[arg(long)]
    pub bib: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Pattern for the inspected names of each entry.
    #[arg(long, value_parser = parse_fmt_pattern, default_value = LABEL_PATTERN)]
    pub pattern: FormatPattern,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read_source(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
        }
    }

    fn names(&mut self, args: &[String]) -> Result<Vec<String>, Failure> {
        if args == ["-"] {
            let text = self.read_source("-")?;
            Ok(text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_string)
                .collect())
        } else {
            Ok(args.to_vec())
        }
    }
}

fn load_metrics(spec: Option<&str>) -> Result<FontMetrics, Failure> {
    match spec {
        None | Some("builtin") => Ok(FontMetrics::builtin()),
        Some("uniform") => Ok(FontMetrics::uniform()),
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            FontMetrics::parse(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

const STACK_USAGE: &str = "usage: namestack stack [OPTIONS] <NAMES>...";

fn cmd_stack(args: &StackArgs, io: &mut Io<'_>) -> Result<String, Failure> {
    let names = io.names(&args.names)?;
    if names.is_empty() {
        return Err(Failure::Usage(format!("no names given\n{STACK_USAGE}")));
    }
    let opts = RenderOptions {
        backend: args.format.into(),
        opacity: args.common.opacity,
        include_tooltip: args.tooltip,
        include_actual_text: args.actual_text,
        expand: args.expand,
        standalone: args.standalone,
        size: args.common.size.unwrap_or(10.0),
        align: if args.center {
            Align::Center
        } else {
            Align::Left
        },
        ..RenderOptions::default()
    };
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());

    if args.circle {
        let metrics = load_metrics(args.common.metrics.as_deref())?;
        let layout = circular_layout(
            &names,
            args.radius,
            args.rotate,
            args.upright,
            &metrics,
            opts.size,
        )
        .map_err(|e| usage(&e))?;
        let stack = build_stack(&names, args.common.opacity).map_err(|e| usage(&e))?;
        return Ok(match opts.backend {
            Backend::Svg => emit_svg_circle(&layout, stack.opacity(), stack.tooltip_text(), &opts),
            _ => return Err(Failure::Usage("--circle needs --format svg".into())),
        });
    }

    if args.grouped {
        let groups: Vec<Vec<String>> = names
            .iter()
            .map(|g| {
                g.split(';')
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .map(str::to_string)
                    .collect()
            })
            .collect();
        let grouped = grouped_stacks(&groups, args.common.opacity).map_err(|e| usage(&e))?;
        return match opts.backend {
            Backend::Latex => grouped
                .stacks()
                .iter()
                .map(|s| emit_latex(s, &opts))
                .collect::<Result<Vec<_>, _>>()
                .map(|v| v.join(" "))
                .map_err(|e| usage(&e)),
            Backend::Html => Ok(grouped
                .stacks()
                .iter()
                .map(|s| {
                    emit_html(
                        s,
                        &RenderOptions {
                            standalone: false,
                            ..opts.clone()
                        },
                    )
                })
                .collect::<Vec<_>>()
                .join("\n")),
            Backend::Svg => {
                let metrics = load_metrics(args.common.metrics.as_deref())?;
                Ok(emit_svg_groups(&grouped, &metrics, &opts))
            }
            Backend::Text => Ok(grouped.actual_text().to_string()),
        };
    }

    let stack = build_stack(&names, args.common.opacity).map_err(|e| usage(&e))?;
    render_stack(&stack, &opts, args.common.metrics.as_deref())
}

fn render_stack(
    stack: &NameStack,
    opts: &RenderOptions,
    metrics: Option<&str>,
) -> Result<String, Failure> {
    Ok(match opts.backend {
        Backend::Latex => emit_latex(stack, opts).map_err(|e| Failure::Usage(e.to_string()))?,
        Backend::Html => emit_html(stack, opts),
        Backend::Svg => emit_svg(stack, &load_metrics(metrics)?, opts),
        Backend::Text => emit_text(stack),
    })
}

fn cmd_bib(args: &BibArgs, io: &mut Io<'_>) -> Result<String, Failure> {
    let text = io.read_source(&args.input)?;
    let entries = parse_bib(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.input)))?;
    let bib = BibOptions {
        pattern: args.pattern.clone(),
        count: !args.no_count,
        year_fallback: args.year_fallback.clone(),
    };
    match args.format {
        BibFormatArg::Latex => emit_bbl(&entries, &bib).map_err(input_err),
        BibFormatArg::Html => {
            let opts = RenderOptions {
                backend: Backend::Html,
                opacity: args.common.opacity,
                standalone: args.standalone,
                ..RenderOptions::default()
            };
            emit_html_bibliography(&entries, &bib, &opts).map_err(input_err)
        }
    }
}

fn cmd_cite(args: &CiteArgs, io: &mut Io<'_>) -> Result<String, Failure> {
    let text = io.read_source(&args.input)?;
    let entries = parse_bib(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.input)))?;
    let mode = match args.mode {
        ModeArg::Textual => CiteMode::Textual,
        ModeArg::Parenthetical => CiteMode::Parenthetical,
    };
    let opts = RenderOptions {
        opacity: args.common.opacity,
        disable_name_links: !args.link_names,
        ..RenderOptions::default()
    };
    let selected: Vec<_> = if args.keys.is_empty() {
        entries.iter().collect()
    } else {
        args.keys
            .iter()
            .map(|k| {
                entries
                    .iter()
                    .find(|e| &e.key == k)
                    .ok_or_else(|| Failure::Input(format!("no entry with key `{k}`")))
            })
            .collect::<Result<_, _>>()?
    };
    let lines = selected
        .into_iter()
        .map(|e| {
            emit_citation(e, mode, &opts).map_err(|err| Failure::Input(format!("{}: {err}", e.key)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(lines.join("\n"))
}

fn inspect_report(
    out: &mut String,
    title: &str,
    stack: &NameStack,
    metrics: &FontMetrics,
    size: f64,
) {
    use std::fmt::Write as _;
    let layout = stack_bbox_aligned(stack.names(), metrics, size, Align::Left);
    let _ = writeln!(out, "{title}: {}", stack.actual_text());
    let _ = writeln!(out, "  names={}", stack.len());
    let _ = writeln!(
        out,
        "  width={} height={}",
        fmt_num(layout.bbox_width),
        fmt_num(layout.bbox_height)
    );
    for depth in 1..=stack.len() as u32 {
        let alpha = effective_alpha(depth, stack.opacity()).expect("depth >= 1");
        let _ = writeln!(out, "  alpha@{depth}={alpha:.3}");
    }
}

fn cmd_inspect(args: &InspectArgs, io: &mut Io<'_>) -> Result<String, Failure> {
    let metrics = load_metrics(args.common.metrics.as_deref())?;
    let size = args.common.size.unwrap_or(1.0);
    let mut out = String::new();
    if let Some(path) = &args.bib {
        let text = io.read_source(path)?;
        let entries = parse_bib(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        for entry in &entries {
            let list = crate::format::entry_authors(entry)
                .map_err(|e| Failure::Input(format!("{}: {e}", entry.key)))?;
            let names: Vec<String> = stack_entries(&list, &args.pattern)
                .iter()
                .map(|n| tex_to_plain(n))
                .collect();
            let stack = build_stack(&names, args.common.opacity).map_err(input_err)?;
            inspect_report(
                &mut out,
                &format!("entry {}", entry.key),
                &stack,
                &metrics,
                size,
            );
        }
        return Ok(out);
    }
    let names = io.names(&args.names)?;
    if names.is_empty() {
        return Err(Failure::Usage(
            "no names given\nusage: namestack inspect [OPTIONS] <NAMES>...".into(),
        ));
    }
    let stack =
        build_stack(&names, args.common.opacity).map_err(|e| Failure::Usage(e.to_string()))?;
    inspect_report(&mut out, "stack", &stack, &metrics, size);
    Ok(out)
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };

    let mut io = Io { stdin };
    let (result, output) = match &cli.command {
        Command::Stack(a) => (cmd_stack(a, &mut io), &a.common.output),
        Command::Bib(a) => (cmd_bib(a, &mut io), &a.common.output),
        Command::Cite(a) => (cmd_cite(a, &mut io), &a.common.output),
        Command::Inspect(a) => (cmd_inspect(a, &mut io), &a.common.output),
    };

    match result {
        Ok(text) => {
            let text = with_newline(text);
            let written = match output {
                Some(path) => {
                    fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(msg) => {
                    let _ = writeln!(stderr, "namestack: {msg}");
                    EXIT_INPUT
                }
            }
        }
        Err(failure) => {
            let msg = match &failure {
                Failure::Usage(m) | Failure::Input(m) => m,
            };
            let _ = writeln!(stderr, "namestack: {msg}");
            failure.code()
        }
    }
}
