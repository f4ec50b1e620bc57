#ifndef NAMESTACK_H
#define NAMESTACK_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Wrap LaTeX in `\pdftooltip`; add a `title` in HTML and SVG.
#define NS_RENDER_TOOLTIP 1

// Wrap LaTeX in an ActualText span.
#define NS_RENDER_ACTUAL_TEXT (1 << 1)

// Emit the `\vbox` lowering instead of `\namestack`.
#define NS_RENDER_EXPAND (1 << 2)

// Emit a complete HTML page.
#define NS_RENDER_STANDALONE (1 << 3)

// Center names in SVG output.
#define NS_RENDER_CENTER (1 << 4)

// Let hyperlinks cover the stacked names in citations.
#define NS_RENDER_LINK_NAMES (1 << 5)

typedef enum NsBackend {
  NS_BACKEND_LATEX = 0,
  NS_BACKEND_HTML = 1,
  NS_BACKEND_SVG = 2,
  NS_BACKEND_TEXT = 3,
} NsBackend;

typedef enum NsCiteMode {
  NS_CITE_MODE_TEXTUAL = 0,
  NS_CITE_MODE_PARENTHETICAL = 1,
} NsCiteMode;

// Result codes.
typedef enum NsStatus {
  NS_STATUS_OK = 0,
  NS_STATUS_NULL_POINTER = 1,
  NS_STATUS_INVALID_UTF8 = 2,
  NS_STATUS_INVALID_ARGUMENT = 3,
  NS_STATUS_PARSE_ERROR = 4,
  NS_STATUS_RENDER_ERROR = 5,
  NS_STATUS_NOT_FOUND = 6,
  NS_STATUS_PANIC = 7,
} NsStatus;

// Parsed `.bib` entries in source order.
typedef struct NsBibliography NsBibliography;

// An immutable stack of names.
typedef struct NsStack NsStack;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message for the last failed call on this thread, or NULL. The
// pointer stays valid until the next call into the library on this thread.
const char *ns_last_error_message(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ns_string_free(char *s);

// Builds a stack from `count` names. `opacity` is NULL for the default or
// a decimal or fraction such as "0.5" or "2/3".
//
// # Safety
// `names` must point to `count` NUL-terminated strings; `out` must be
// writable.
enum NsStatus ns_stack_new(const char *const *names,
                           size_t count,
                           const char *opacity,
                           struct NsStack **out);

// Releases a stack. NULL is ignored.
//
// # Safety
// `stack` must come from [`ns_stack_new`] and not have been freed.
void ns_stack_free(struct NsStack *stack);

// Number of names in the stack; 0 for NULL.
//
// # Safety
// `stack` must be NULL or a live handle.
size_t ns_stack_len(const struct NsStack *stack);

// Renders a stack. `flags` is a combination of the `NS_RENDER_*` bits;
// SVG uses the built-in metrics at 10 pt.
//
// # Safety
// `stack` must be a live handle; `out` must be writable.
enum NsStatus ns_stack_render(const struct NsStack *stack,
                              enum NsBackend backend,
                              uint32_t flags,
                              char **out);

// Alpha where `layers` names at `opacity` overlap.
//
// # Safety
// `out` must be writable.
enum NsStatus ns_effective_alpha(uint32_t layers, double opacity, double *out);

// Parses `.bib` source.
//
// # Safety
// `source` must be a NUL-terminated string; `out` must be writable.
enum NsStatus ns_bib_parse(const char *source, struct NsBibliography **out);

// Releases a bibliography. NULL is ignored.
//
// # Safety
// `bib` must come from [`ns_bib_parse`] and not have been freed.
void ns_bib_free(struct NsBibliography *bib);

// Number of entries; 0 for NULL.
//
// # Safety
// `bib` must be NULL or a live handle.
size_t ns_bib_len(const struct NsBibliography *bib);

// Citation key of entry `index`.
//
// # Safety
// `bib` must be a live handle; `out` must be writable.
enum NsStatus ns_bib_key(const struct NsBibliography *bib, size_t index, char **out);

// A `thebibliography` environment. `pattern` is NULL for the default name
// pattern; `count` appends the author count to each name block.
//
// # Safety
// `bib` must be a live handle; `pattern` NULL or a NUL-terminated string;
// `out` must be writable.
enum NsStatus ns_bib_to_bbl(const struct NsBibliography *bib,
                            const char *pattern,
                            bool count,
                            char **out);

// An HTML bibliography list.
//
// # Safety
// As for [`ns_bib_to_bbl`].
enum NsStatus ns_bib_to_html(const struct NsBibliography *bib,
                             const char *pattern,
                             bool count,
                             char **out);

// An author-year citation of the entry with key `key`. Only
// `NS_RENDER_LINK_NAMES` is honored in `flags`.
//
// # Safety
// `bib` must be a live handle; `key` a NUL-terminated string; `out` must
// be writable.
enum NsStatus ns_cite(const struct NsBibliography *bib,
                      const char *key,
                      enum NsCiteMode mode,
                      uint32_t flags,
                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NAMESTACK_H */
