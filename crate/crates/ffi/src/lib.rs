//! C ABI over `namestack`.
//!
//! Every fallible function returns an [`NsStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`ns_last_error_message`]. Strings handed out by the library are
//! NUL-terminated UTF-8 and must be released with [`ns_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use namestack::render::{emit_svg, emit_text};
use namestack::{
    build_stack, effective_alpha, emit_bbl, emit_citation, emit_html, emit_html_bibliography,
    emit_latex, parse_bib, parse_pattern, Align, BibEntry, BibOptions, CiteMode, FontMetrics,
    NameStack, Opacity, RenderOptions,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ParseError = 4,
    RenderError = 5,
    NotFound = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsBackend {
    Latex = 0,
    Html = 1,
    Svg = 2,
    Text = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsCiteMode {
    Textual = 0,
    Parenthetical = 1,
}

/// Wrap LaTeX in `\pdftooltip`; add a `title` in HTML and SVG.
pub const NS_RENDER_TOOLTIP: u32 = 1;
/// Wrap LaTeX in an ActualText span.
pub const NS_RENDER_ACTUAL_TEXT: u32 = 1 << 1;
/// Emit the `\vbox` lowering instead of `\namestack`.
pub const NS_RENDER_EXPAND: u32 = 1 << 2;
/// Emit a complete HTML page.
pub const NS_RENDER_STANDALONE: u32 = 1 << 3;
/// Center names in SVG output.
pub const NS_RENDER_CENTER: u32 = 1 << 4;
/// Let hyperlinks cover the stacked names in citations.
pub const NS_RENDER_LINK_NAMES: u32 = 1 << 5;

/// An immutable stack of names.
pub struct NsStack(NameStack);

/// Parsed `.bib` entries in source order.
pub struct NsBibliography(Vec<BibEntry>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(NsStatus, String);

impl Failure {
    fn new(status: NsStatus, message: impl ToString) -> Self {
        Failure(status, message.to_string())
    }
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            NsStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            NsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(
            NsStatus::NullPointer,
            format!("{what} is NULL"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(NsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn optional_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(NsStatus::NullPointer, format!("{what} is NULL")))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(
            NsStatus::NullPointer,
            "output pointer is NULL",
        ))
    } else {
        Ok(())
    }
}

unsafe fn hand_out(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|e| Failure::new(NsStatus::RenderError, e))?;
    *out = s.into_raw();
    Ok(())
}

fn render_options(flags: u32) -> RenderOptions {
    RenderOptions {
        include_tooltip: flags & NS_RENDER_TOOLTIP != 0,
        include_actual_text: flags & NS_RENDER_ACTUAL_TEXT != 0,
        expand: flags & NS_RENDER_EXPAND != 0,
        standalone: flags & NS_RENDER_STANDALONE != 0,
        disable_name_links: flags & NS_RENDER_LINK_NAMES == 0,
        align: if flags & NS_RENDER_CENTER != 0 {
            Align::Center
        } else {
            Align::Left
        },
        ..RenderOptions::default()
    }
}

/// The message for the last failed call on this thread, or NULL. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ns_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |message| message.as_ptr())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a stack from `count` names. `opacity` is NULL for the default or
/// a decimal or fraction such as "0.5" or "2/3".
///
/// # Safety
/// `names` must point to `count` NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ns_stack_new(
    names: *const *const c_char,
    count: usize,
    opacity: *const c_char,
    out: *mut *mut NsStack,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        if names.is_null() && count > 0 {
            return Err(Failure::new(NsStatus::NullPointer, "names is NULL"));
        }
        let mut list = Vec::with_capacity(count);
        for i in 0..count {
            list.push(text(*names.add(i), "name")?);
        }
        let opacity = optional_text(opacity, "opacity")?
            .map(str::parse::<Opacity>)
            .transpose()
            .map_err(|e| Failure::new(NsStatus::InvalidArgument, e))?;
        let stack =
            build_stack(&list, opacity).map_err(|e| Failure::new(NsStatus::InvalidArgument, e))?;
        *out = Box::into_raw(Box::new(NsStack(stack)));
        Ok(())
    })
}

/// Releases a stack. NULL is ignored.
///
/// # Safety
/// `stack` must come from [`ns_stack_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ns_stack_free(stack: *mut NsStack) {
    if !stack.is_null() {
        drop(Box::from_raw(stack));
    }
}

/// Number of names in the stack; 0 for NULL.
///
/// # Safety
/// `stack` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ns_stack_len(stack: *const NsStack) -> usize {
    stack.as_ref().map_or(0, |s| s.0.len())
}

/// Renders a stack. `flags` is a combination of the `NS_RENDER_*` bits;
/// SVG uses the built-in metrics at 10 pt.
///
/// # Safety
/// `stack` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_stack_render(
    stack: *const NsStack,
    backend: NsBackend,
    flags: u32,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let stack = &reference(stack, "stack")?.0;
        let opts = render_options(flags);
        let rendered = match backend {
            NsBackend::Latex => {
                emit_latex(stack, &opts).map_err(|e| Failure::new(NsStatus::RenderError, e))?
            }
            NsBackend::Html => emit_html(stack, &opts),
            NsBackend::Svg => emit_svg(stack, &FontMetrics::builtin(), &opts),
            NsBackend::Text => emit_text(stack),
        };
        hand_out(out, rendered)
    })
}

/// Alpha where `layers` names at `opacity` overlap.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_effective_alpha(layers: u32, opacity: f64, out: *mut f64) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let op =
            Opacity::from_f64(opacity).map_err(|e| Failure::new(NsStatus::InvalidArgument, e))?;
        *out =
            effective_alpha(layers, op).map_err(|e| Failure::new(NsStatus::InvalidArgument, e))?;
        Ok(())
    })
}

/// Parses `.bib` source.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_bib_parse(
    source: *const c_char,
    out: *mut *mut NsBibliography,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let entries = parse_bib(text(source, "source")?)
            .map_err(|e| Failure::new(NsStatus::ParseError, e))?;
        *out = Box::into_raw(Box::new(NsBibliography(entries)));
        Ok(())
    })
}

/// Releases a bibliography. NULL is ignored.
///
/// # Safety
/// `bib` must come from [`ns_bib_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ns_bib_free(bib: *mut NsBibliography) {
    if !bib.is_null() {
        drop(Box::from_raw(bib));
    }
}

/// Number of entries; 0 for NULL.
///
/// # Safety
/// `bib` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ns_bib_len(bib: *const NsBibliography) -> usize {
    bib.as_ref().map_or(0, |b| b.0.len())
}

/// Citation key of entry `index`.
///
/// # Safety
/// `bib` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_bib_key(
    bib: *const NsBibliography,
    index: usize,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let entries = &reference(bib, "bib")?.0;
        let entry = entries.get(index).ok_or_else(|| {
            Failure::new(NsStatus::NotFound, format!("no entry at index {index}"))
        })?;
        hand_out(out, entry.key.clone())
    })
}

unsafe fn bib_options(pattern: *const c_char, count: bool) -> Result<BibOptions, Failure> {
    let mut opts = BibOptions {
        count,
        ..BibOptions::default()
    };
    if let Some(p) = optional_text(pattern, "pattern")? {
        opts.pattern = parse_pattern(p).map_err(|e| Failure::new(NsStatus::InvalidArgument, e))?;
    }
    Ok(opts)
}

/// A `thebibliography` environment. `pattern` is NULL for the default name
/// pattern; `count` appends the author count to each name block.
///
/// # Safety
/// `bib` must be a live handle; `pattern` NULL or a NUL-terminated string;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_bib_to_bbl(
    bib: *const NsBibliography,
    pattern: *const c_char,
    count: bool,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let entries = &reference(bib, "bib")?.0;
        let opts = bib_options(pattern, count)?;
        let bbl = emit_bbl(entries, &opts).map_err(|e| Failure::new(NsStatus::RenderError, e))?;
        hand_out(out, bbl)
    })
}

/// An HTML bibliography list.
///
/// # Safety
/// As for [`ns_bib_to_bbl`].
#[no_mangle]
pub unsafe extern "C" fn ns_bib_to_html(
    bib: *const NsBibliography,
    pattern: *const c_char,
    count: bool,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let entries = &reference(bib, "bib")?.0;
        let opts = bib_options(pattern, count)?;
        let html = emit_html_bibliography(entries, &opts, &RenderOptions::default())
            .map_err(|e| Failure::new(NsStatus::RenderError, e))?;
        hand_out(out, html)
    })
}

/// An author-year citation of the entry with key `key`. Only
/// `NS_RENDER_LINK_NAMES` is honored in `flags`.
///
/// # Safety
/// `bib` must be a live handle; `key` a NUL-terminated string; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn ns_cite(
    bib: *const NsBibliography,
    key: *const c_char,
    mode: NsCiteMode,
    flags: u32,
    out: *mut *mut c_char,
) -> NsStatus {
    guard(|| {
        check_out(out)?;
        let entries = &reference(bib, "bib")?.0;
        let key = text(key, "key")?;
        let entry = entries
            .iter()
            .find(|e| e.key == key)
            .ok_or_else(|| Failure::new(NsStatus::NotFound, format!("no entry `{key}`")))?;
        let mode = match mode {
            NsCiteMode::Textual => CiteMode::Textual,
            NsCiteMode::Parenthetical => CiteMode::Parenthetical,
        };
        let cite = emit_citation(entry, mode, &render_options(flags))
            .map_err(|e| Failure::new(NsStatus::RenderError, e))?;
        hand_out(out, cite)
    })
}
