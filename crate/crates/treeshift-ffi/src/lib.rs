//! C ABI for the treeshift library.
//!
//! Objects are created by parsing the same documents the command-line tool
//! reads, handled through opaque pointers, and released with the matching
//! `_free` function. Every fallible call returns a [`TsStatus`]; on failure
//! [`ts_last_error`] holds a message for the calling thread until the next
//! failing call. Strings returned through out-parameters are owned by the
//! caller and must be released with [`ts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use treeshift::ca::CellularAutomaton;
use treeshift::decide::{self, SoficInput, Verdict};
use treeshift::error::{Budget, Error};
use treeshift::format::{parse_document, write_document, Document};
use treeshift::fta::{subset_fta, EmptinessMethod, FiniteTreeAutomaton, SubsetMode};
use treeshift::moore::MooreColoring;
use treeshift::pattern::Pattern;
use treeshift::rabin::{Membership, RabinAutomaton};
use treeshift::sft::SftDescription;
use treeshift::Alphabet;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    TsOk = 0,
    /// Malformed document or term.
    TsParseError = 1,
    /// Semantic error: arity or alphabet mismatch, non-essential input,
    /// invalid object.
    TsSemanticError = 2,
    /// A construction exceeded the state or table budget.
    TsBudgetExceeded = 3,
    /// A required pointer argument was null.
    TsNullArgument = 4,
    /// Input text was not valid UTF-8.
    TsInvalidUtf8 = 5,
}

pub struct TsRabin(RabinAutomaton);
pub struct TsFta(FiniteTreeAutomaton);
pub struct TsSft(SftDescription);
pub struct TsCa(CellularAutomaton);
pub struct TsPattern {
    alphabet: Alphabet,
    pattern: Pattern,
}
pub struct TsMoore {
    alphabet: Alphabet,
    coloring: MooreColoring,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(e: Error) -> TsStatus {
    let status = match e {
        Error::Parse(_) => TsStatus::TsParseError,
        Error::BudgetExceeded { .. } => TsStatus::TsBudgetExceeded,
        _ => TsStatus::TsSemanticError,
    };
    set_error(&e.to_string());
    status
}

fn budget_of(max_states: usize) -> Budget {
    if max_states == 0 {
        Budget::default()
    } else {
        Budget::with_max_states(max_states)
    }
}

/// Message of the most recent failure on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a function of this library and not yet
/// freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn text_of<'a>(text: *const c_char) -> Result<&'a str, TsStatus> {
    if text.is_null() {
        set_error("null text argument");
        return Err(TsStatus::TsNullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("text is not valid utf-8");
        TsStatus::TsInvalidUtf8
    })
}

fn export_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn deref<'a, T>(ptr: *const T) -> Result<&'a T, TsStatus> {
    if ptr.is_null() {
        set_error("null handle argument");
        Err(TsStatus::TsNullArgument)
    } else {
        Ok(&*ptr)
    }
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> TsStatus {
    if out.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    TsStatus::TsOk
}

unsafe fn parse_as<T>(
    text: *const c_char,
    out: *mut *mut T,
    extract: impl FnOnce(Document) -> Result<T, String>,
) -> TsStatus {
    let text = match text_of(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_document(text) {
        Ok(doc) => match extract(doc) {
            Ok(v) => store(out, v),
            Err(message) => {
                set_error(&message);
                TsStatus::TsParseError
            }
        },
        Err(e) => fail(e),
    }
}

unsafe fn free_handle<T>(ptr: *mut T) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

unsafe fn handle_text<T>(ptr: *const T, doc: impl FnOnce(&T) -> Document) -> *mut c_char {
    match deref(ptr) {
        Ok(v) => export_string(write_document(&doc(v))),
        Err(_) => ptr::null_mut(),
    }
}

/// Parses a rabin document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_parse(text: *const c_char, out: *mut *mut TsRabin) -> TsStatus {
    parse_as(text, out, |doc| match doc {
        Document::Rabin(a) => Ok(TsRabin(a)),
        other => Err(format!("expected a rabin document, found {}", other.kind())),
    })
}

/// # Safety
/// `ptr` must come from `ts_rabin_parse` or a constructing call; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_free(ptr: *mut TsRabin) {
    free_handle(ptr);
}

/// Canonical document text; release with `ts_string_free`.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_to_text(ptr: *const TsRabin) -> *mut c_char {
    handle_text(ptr, |v| Document::Rabin(v.0.clone()))
}

/// Parses an fta document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_parse(text: *const c_char, out: *mut *mut TsFta) -> TsStatus {
    parse_as(text, out, |doc| match doc {
        Document::Fta(g) => Ok(TsFta(g)),
        other => Err(format!("expected an fta document, found {}", other.kind())),
    })
}

/// # Safety
/// `ptr` must come from `ts_fta_parse` or a constructing call; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_free(ptr: *mut TsFta) {
    free_handle(ptr);
}

/// Canonical document text; release with `ts_string_free`.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_to_text(ptr: *const TsFta) -> *mut c_char {
    handle_text(ptr, |v| Document::Fta(v.0.clone()))
}

/// Parses an sft document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_sft_parse(text: *const c_char, out: *mut *mut TsSft) -> TsStatus {
    parse_as(text, out, |doc| match doc {
        Document::Sft(x) => Ok(TsSft(x)),
        other => Err(format!("expected an sft document, found {}", other.kind())),
    })
}

/// # Safety
/// `ptr` must come from `ts_sft_parse` or a constructing call; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_sft_free(ptr: *mut TsSft) {
    free_handle(ptr);
}

/// Canonical document text; release with `ts_string_free`.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_sft_to_text(ptr: *const TsSft) -> *mut c_char {
    handle_text(ptr, |v| Document::Sft(v.0.clone()))
}

/// Parses a ca document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_ca_parse(text: *const c_char, out: *mut *mut TsCa) -> TsStatus {
    parse_as(text, out, |doc| match doc {
        Document::Ca(t) => Ok(TsCa(t)),
        other => Err(format!("expected a ca document, found {}", other.kind())),
    })
}

/// # Safety
/// `ptr` must come from `ts_ca_parse` or a constructing call; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_ca_free(ptr: *mut TsCa) {
    free_handle(ptr);
}

/// Canonical document text; release with `ts_string_free`.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_ca_to_text(ptr: *const TsCa) -> *mut c_char {
    handle_text(ptr, |v| Document::Ca(v.0.clone()))
}

/// Parses a pattern document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_pattern_parse(
    text: *const c_char,
    out: *mut *mut TsPattern,
) -> TsStatus {
    parse_as(text, out, |doc| match doc {
        Document::Pattern { alphabet, pattern } => Ok(TsPattern { alphabet, pattern }),
        other => Err(format!("expected a pattern document, found {}", other.kind())),
    })
}

/// # Safety
/// `ptr` must come from `ts_pattern_parse`; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_pattern_free(ptr: *mut TsPattern) {
    free_handle(ptr);
}

/// Canonical document text; release with `ts_string_free`.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_pattern_to_text(ptr: *const TsPattern) -> *mut c_char {
    handle_text(ptr, |v| Document::Pattern {
        alphabet: v.alphabet.clone(),
        pattern: v.pattern.clone(),
    })
}

/// Parses a moore document.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_moore_parse(text: *const c_char, out: *mut *mut TsMoore) -> TsStatus {
    parse_as(text, out, |doc| match doc {
        Document::Moore { alphabet, coloring } => Ok(TsMoore { alphabet, coloring }),
        other => Err(format!("expected a moore document, found {}", other.kind())),
    })
}

/// # Safety
/// `ptr` must come from `ts_moore_parse`; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ts_moore_free(ptr: *mut TsMoore) {
    free_handle(ptr);
}

/// Canonical document text; release with `ts_string_free`.
///
/// # Safety
/// `ptr` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_moore_to_text(ptr: *const TsMoore) -> *mut c_char {
    handle_text(ptr, |v| Document::Moore {
        alphabet: v.alphabet.clone(),
        coloring: v.coloring.clone(),
    })
}

/// The canonical term of a pattern; release with `ts_string_free`.
///
/// # Safety
/// `p` must be a live pattern handle.
#[no_mangle]
pub unsafe extern "C" fn ts_pattern_term(p: *const TsPattern) -> *mut c_char {
    match deref(p) {
        Ok(p) => export_string(p.pattern.to_term(&p.alphabet)),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `a` must be a live automaton handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_essentialize(
    a: *const TsRabin,
    out: *mut *mut TsRabin,
) -> TsStatus {
    match deref(a) {
        Ok(a) => store(out, TsRabin(a.0.essentialize())),
        Err(s) => s,
    }
}

/// # Safety
/// `a` must be a live automaton handle; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_classify(
    a: *const TsRabin,
    deterministic: *mut bool,
    codeterministic: *mut bool,
    cocomplete: *mut bool,
) -> TsStatus {
    let a = match deref(a) {
        Ok(a) => a,
        Err(s) => return s,
    };
    if deterministic.is_null() || codeterministic.is_null() || cocomplete.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    let c = a.0.classify();
    *deterministic = c.deterministic;
    *codeterministic = c.codeterministic;
    *cocomplete = c.cocomplete;
    TsStatus::TsOk
}

/// # Safety
/// `a` must be a live automaton handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_is_empty_shift(
    a: *const TsRabin,
    out: *mut bool,
) -> TsStatus {
    match deref(a) {
        Ok(a) if !out.is_null() => {
            *out = a.0.is_empty_shift();
            TsStatus::TsOk
        }
        Ok(_) => {
            set_error("null out-parameter");
            TsStatus::TsNullArgument
        }
        Err(s) => s,
    }
}

/// # Safety
/// `a` must be a live automaton handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_codeterminize(
    a: *const TsRabin,
    max_states: usize,
    out: *mut *mut TsRabin,
) -> TsStatus {
    let a = match deref(a) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match a.0.codeterminize(&budget_of(max_states)) {
        Ok(c) => store(out, TsRabin(c)),
        Err(e) => fail(e),
    }
}

/// # Safety
/// `a` and `b` must be live automaton handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_join(
    a: *const TsRabin,
    b: *const TsRabin,
    out: *mut *mut TsRabin,
) -> TsStatus {
    let (a, b) = match (deref(a), deref(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match a.0.join(&b.0) {
        Ok(j) => store(out, TsRabin(j)),
        Err(e) => fail(e),
    }
}

fn adapt_pattern(p: &TsPattern, target: &Alphabet) -> Result<Pattern, Error> {
    let emb = p.alphabet.embedding(target).ok_or_else(|| {
        Error::AlphabetMismatch("pattern alphabet is not part of the automaton's".into())
    })?;
    Ok(p.pattern.map_letters(|l| emb[l.0]))
}

/// # Safety
/// `a` and `p` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_accepts(
    a: *const TsRabin,
    p: *const TsPattern,
    out: *mut bool,
) -> TsStatus {
    let (a, p) = match (deref(a), deref(p)) {
        (Ok(a), Ok(p)) => (a, p),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    if out.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    let adapted = match adapt_pattern(p, a.0.alphabet()) {
        Ok(q) => q,
        Err(e) => return fail(e),
    };
    match a.0.accepts_pattern(&adapted) {
        Ok(run) => {
            *out = run.is_some();
            TsStatus::TsOk
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `g` and `p` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_accepts(
    g: *const TsFta,
    p: *const TsPattern,
    out: *mut bool,
) -> TsStatus {
    let (g, p) = match (deref(g), deref(p)) {
        (Ok(g), Ok(p)) => (g, p),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    if out.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    let adapted = match adapt_pattern(p, g.0.base().alphabet()) {
        Ok(q) => q,
        Err(e) => return fail(e),
    };
    match g.0.accepts(&adapted) {
        Ok(run) => {
            *out = run.is_some();
            TsStatus::TsOk
        }
        Err(e) => fail(e),
    }
}

/// The finite-tree automaton recognizing the patterns the automaton's shift
/// is missing.
///
/// # Safety
/// `a` must be a live automaton handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_complement(
    a: *const TsRabin,
    max_states: usize,
    out: *mut *mut TsFta,
) -> TsStatus {
    let a = match deref(a) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match subset_fta(&a.0, SubsetMode::Complement, &budget_of(max_states)) {
        Ok(g) => store(out, TsFta(g)),
        Err(e) => fail(e),
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_complement(
    g: *const TsFta,
    max_states: usize,
    out: *mut *mut TsFta,
) -> TsStatus {
    let g = match deref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    match g.0.complement(&budget_of(max_states)) {
        Ok(c) => store(out, TsFta(c)),
        Err(e) => fail(e),
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_is_empty(
    g: *const TsFta,
    max_states: usize,
    out: *mut bool,
) -> TsStatus {
    let g = match deref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    match g.0.is_empty(EmptinessMethod::Fixpoint, &budget_of(max_states)) {
        Ok(empty) => {
            *out = empty;
            TsStatus::TsOk
        }
        Err(e) => fail(e),
    }
}

/// A minimal accepted pattern as a term, or null when the language is
/// empty; release the string with `ts_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_fta_sample(
    g: *const TsFta,
    max_states: usize,
    out: *mut *mut c_char,
) -> TsStatus {
    let g = match deref(g) {
        Ok(g) => g,
        Err(s) => return s,
    };
    if out.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    match g.0.sample_accepted(&budget_of(max_states)) {
        Ok(Some(p)) => {
            *out = export_string(p.to_term(g.0.base().alphabet()));
            TsStatus::TsOk
        }
        Ok(None) => {
            *out = ptr::null_mut();
            TsStatus::TsOk
        }
        Err(e) => fail(e),
    }
}

/// Membership of the configuration described by a Moore coloring. On
/// rejection `member` is false and `rejection_depth` holds a depth whose
/// truncation is already rejected.
///
/// # Safety
/// `a` and `m` must be live handles; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_rabin_member_moore(
    a: *const TsRabin,
    m: *const TsMoore,
    member: *mut bool,
    rejection_depth: *mut usize,
) -> TsStatus {
    let (a, m) = match (deref(a), deref(m)) {
        (Ok(a), Ok(m)) => (a, m),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    if member.is_null() || rejection_depth.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    let emb = match m.alphabet.embedding(a.0.alphabet()) {
        Some(emb) => emb,
        None => {
            return fail(Error::AlphabetMismatch(
                "coloring alphabet is not part of the automaton's".into(),
            ))
        }
    };
    let outputs = (0..m.coloring.state_count())
        .map(|q| emb[m.coloring.output(q).0])
        .collect();
    let adapted = match m.coloring.with_outputs(outputs) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match a.0.member_moore(&adapted) {
        Ok(Membership::Member) => {
            *member = true;
            *rejection_depth = 0;
            TsStatus::TsOk
        }
        Ok(Membership::RejectedAtDepth(d)) => {
            *member = false;
            *rejection_depth = d;
            TsStatus::TsOk
        }
        Err(e) => fail(e),
    }
}

/// Canonical Rabin presentation of a shift of finite type.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_sft_present(
    x: *const TsSft,
    max_states: usize,
    out: *mut *mut TsRabin,
) -> TsStatus {
    let x = match deref(x) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match x.0.canonical_presentation(&budget_of(max_states)) {
        Ok(a) => store(out, TsRabin(a)),
        Err(e) => fail(e),
    }
}

/// Presents the automaton's shift as the image of a shift of finite type
/// over its bundles under a one-letter covering map.
///
/// # Safety
/// `a` must be a live handle; `out_sft` and `out_ca` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_sft_cover(
    a: *const TsRabin,
    max_states: usize,
    out_sft: *mut *mut TsSft,
    out_ca: *mut *mut TsCa,
) -> TsStatus {
    let a = match deref(a) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match treeshift::ca::sft_cover(&a.0, &budget_of(max_states)) {
        Ok((cover, label_map)) => {
            let s = store(out_sft, TsSft(cover));
            if s != TsStatus::TsOk {
                return s;
            }
            store(out_ca, TsCa(label_map))
        }
        Err(e) => fail(e),
    }
}

/// The composite `outer ∘ inner`.
///
/// # Safety
/// `outer` and `inner` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_ca_compose(
    outer: *const TsCa,
    inner: *const TsCa,
    max_states: usize,
    out: *mut *mut TsCa,
) -> TsStatus {
    let (outer, inner) = match (deref(outer), deref(inner)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match outer.0.compose(&inner.0, &budget_of(max_states)) {
        Ok(c) => store(out, TsCa(c)),
        Err(e) => fail(e),
    }
}

/// Rabin presentation of the image of a shift of finite type under a
/// cellular automaton.
///
/// # Safety
/// `ca` and `x` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_ca_image(
    ca: *const TsCa,
    x: *const TsSft,
    max_states: usize,
    out: *mut *mut TsRabin,
) -> TsStatus {
    let (ca, x) = match (deref(ca), deref(x)) {
        (Ok(t), Ok(x)) => (t, x),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match ca.0.image_automaton(&x.0, &budget_of(max_states)) {
        Ok(a) => store(out, TsRabin(a)),
        Err(e) => fail(e),
    }
}

unsafe fn export_verdict(
    v: Verdict,
    answer: *mut bool,
    witness: *mut *mut c_char,
) -> TsStatus {
    if answer.is_null() || witness.is_null() {
        set_error("null out-parameter");
        return TsStatus::TsNullArgument;
    }
    *answer = v.answer;
    *witness = match v.witness {
        Some(w) => export_string(w.to_term(&v.alphabet)),
        None => ptr::null_mut(),
    };
    TsStatus::TsOk
}

/// Whether the automaton presents the full shift; on a negative answer
/// `witness` receives a missed pattern (release with `ts_string_free`).
///
/// # Safety
/// `a` must be a live handle; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_is_full(
    a: *const TsRabin,
    max_states: usize,
    answer: *mut bool,
    witness: *mut *mut c_char,
) -> TsStatus {
    let a = match deref(a) {
        Ok(a) => a,
        Err(s) => return s,
    };
    match decide::is_full(&a.0, &budget_of(max_states)) {
        Ok(v) => export_verdict(v, answer, witness),
        Err(e) => fail(e),
    }
}

/// Equality of the shifts presented by two automata; on inequality
/// `witness` receives a pattern of exactly one side.
///
/// # Safety
/// `a` and `b` must be live handles; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_equal(
    a: *const TsRabin,
    b: *const TsRabin,
    max_states: usize,
    answer: *mut bool,
    witness: *mut *mut c_char,
) -> TsStatus {
    let (a, b) = match (deref(a), deref(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let result = decide::equal_sofic(
        &SoficInput::Automaton(a.0.clone()),
        &SoficInput::Automaton(b.0.clone()),
        &budget_of(max_states),
    );
    match result {
        Ok(v) => export_verdict(v, answer, witness),
        Err(e) => fail(e),
    }
}

/// Containment of the first presented shift in the second.
///
/// # Safety
/// `a` and `b` must be live handles; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_contained(
    a: *const TsRabin,
    b: *const TsRabin,
    max_states: usize,
    answer: *mut bool,
    witness: *mut *mut c_char,
) -> TsStatus {
    let (a, b) = match (deref(a), deref(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let result = decide::contained_sofic(
        &SoficInput::Automaton(a.0.clone()),
        &SoficInput::Automaton(b.0.clone()),
        &budget_of(max_states),
    );
    match result {
        Ok(v) => export_verdict(v, answer, witness),
        Err(e) => fail(e),
    }
}

/// Surjectivity of a cellular automaton from the shift presented by `x`
/// onto the shift presented by `y`.
///
/// # Safety
/// `ca`, `x` and `y` must be live handles; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ts_surjective(
    ca: *const TsCa,
    x: *const TsRabin,
    y: *const TsRabin,
    max_states: usize,
    answer: *mut bool,
    witness: *mut *mut c_char,
) -> TsStatus {
    let (ca, x, y) = match (deref(ca), deref(x), deref(y)) {
        (Ok(t), Ok(x), Ok(y)) => (t, x, y),
        (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
    };
    let result = decide::surjective(
        &ca.0,
        &SoficInput::Automaton(x.0.clone()),
        &SoficInput::Automaton(y.0.clone()),
        &budget_of(max_states),
    );
    match result {
        Ok(v) => export_verdict(v, answer, witness),
        Err(e) => fail(e),
    }
}
