//! Text format for finite (monoidal) categories, functors, and natural
//! transformations. Parsing is total: any byte string yields an AST plus
//! diagnostics with byte spans and 1-based line/column positions.
//!
//! Identities are implicit (`id_<object>` names are reserved), composition
//! tables may be completed from partial equations with `derive;`, and cell
//! assignments forced by a singleton hom-set may be omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::fincat::{product_category, FinCat, IsoWitness, MorId, ObjId};
use crate::functor::{Functor, NatTrans};
use crate::monoidal::{
    assemble_monoidal, AssociatorData, MonoidalCategory, StagedError, TensorData, UnitData,
    UnitorData,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub span: Span,
    pub line: usize,
    pub col: usize,
}

/// Byte offset -> 1-based (line, column) in LF-normalized text.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let upto = &text[..offset.min(text.len())];
    let line = upto.bytes().filter(|&b| b == b'\n').count() + 1;
    let col = upto.rfind('\n').map_or(offset + 1, |p| offset - p);
    (line, col)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spanned<T> {
    pub value: T,
    pub span: Span,
}

impl<T> Spanned<T> {
    fn new(value: T, span: Span) -> Self {
        Spanned { value, span }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphDecl {
    pub name: Spanned<String>,
    pub src: Spanned<String>,
    pub tgt: Spanned<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeDecl {
    pub f: Spanned<String>,
    pub g: Spanned<String>,
    pub h: Spanned<String>,
}

/// A `tensor X * Y = Z;` entry; operands are classified as objects or
/// morphisms during elaboration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDecl {
    pub lhs: Spanned<String>,
    pub rhs: Spanned<String>,
    pub out: Spanned<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonoidalBlock {
    pub unit: Option<Spanned<String>>,
    pub tensor: Vec<TensorDecl>,
    pub lunitor: Vec<(Spanned<String>, Spanned<String>)>,
    pub runitor: Vec<(Spanned<String>, Spanned<String>)>,
    pub assoc: Vec<([Spanned<String>; 3], Spanned<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Spanned<String>,
    pub objects: Vec<Spanned<String>>,
    pub morphs: Vec<MorphDecl>,
    pub composes: Vec<ComposeDecl>,
    pub derive_closure: bool,
    pub monoidal: Option<MonoidalBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorDecl {
    pub name: Spanned<String>,
    pub dom: Spanned<String>,
    pub cod: Spanned<String>,
    pub on_objects: Vec<(Spanned<String>, Spanned<String>)>,
    pub on_morphisms: Vec<(Spanned<String>, Spanned<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransDecl {
    pub name: Spanned<String>,
    pub source: Spanned<String>,
    pub target: Spanned<String>,
    pub components: Vec<(Spanned<String>, Spanned<String>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CatSpecAst {
    pub categories: Vec<CategoryDecl>,
    pub functors: Vec<FunctorDecl>,
    pub nattrans: Vec<NatTransDecl>,
}

impl CatSpecAst {
    pub fn is_empty(&self) -> bool {
        self.categories.is_empty() && self.functors.is_empty() && self.nattrans.is_empty()
    }

    /// Zeroes every span, for span-insensitive AST comparison.
    pub fn strip_spans(&mut self) {
        fn z<T>(s: &mut Spanned<T>) {
            s.span = Span::default();
        }
        for c in &mut self.categories {
            z(&mut c.name);
            c.objects.iter_mut().for_each(z);
            for m in &mut c.morphs {
                z(&mut m.name);
                z(&mut m.src);
                z(&mut m.tgt);
            }
            for e in &mut c.composes {
                z(&mut e.f);
                z(&mut e.g);
                z(&mut e.h);
            }
            if let Some(mb) = &mut c.monoidal {
                if let Some(u) = &mut mb.unit {
                    z(u);
                }
                for t in &mut mb.tensor {
                    z(&mut t.lhs);
                    z(&mut t.rhs);
                    z(&mut t.out);
                }
                for (a, f) in mb.lunitor.iter_mut().chain(mb.runitor.iter_mut()) {
                    z(a);
                    z(f);
                }
                for (abc, f) in &mut mb.assoc {
                    abc.iter_mut().for_each(z);
                    z(f);
                }
            }
        }
        for f in &mut self.functors {
            z(&mut f.name);
            z(&mut f.dom);
            z(&mut f.cod);
            for (a, b) in f.on_objects.iter_mut().chain(f.on_morphisms.iter_mut()) {
                z(a);
                z(b);
            }
        }
        for t in &mut self.nattrans {
            z(&mut t.name);
            z(&mut t.source);
            z(&mut t.target);
            for (a, b) in &mut t.components {
                z(a);
                z(b);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub ast: CatSpecAst,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn is_ok(&self) -> bool {
        !self.diagnostics.iter().any(|d| d.severity == Severity::Error)
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Semi,
    LBrace,
    RBrace,
    Eq,
    Star,
    Dot,
    Arrow,
    FatArrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Star => "`*`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(text: &str, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b':' => {
                out.push(Token { tok: Tok::Colon, span: Span { start: i, end: i + 1 } });
                i += 1;
            }
            b';' => {
                out.push(Token { tok: Tok::Semi, span: Span { start: i, end: i + 1 } });
                i += 1;
            }
            b'{' => {
                out.push(Token { tok: Tok::LBrace, span: Span { start: i, end: i + 1 } });
                i += 1;
            }
            b'}' => {
                out.push(Token { tok: Tok::RBrace, span: Span { start: i, end: i + 1 } });
                i += 1;
            }
            b'*' => {
                out.push(Token { tok: Tok::Star, span: Span { start: i, end: i + 1 } });
                i += 1;
            }
            b'.' => {
                out.push(Token { tok: Tok::Dot, span: Span { start: i, end: i + 1 } });
                i += 1;
            }
            b',' => i += 1, // commas are optional separators
            b'=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push(Token { tok: Tok::FatArrow, span: Span { start: i, end: i + 2 } });
                    i += 2;
                } else {
                    out.push(Token { tok: Tok::Eq, span: Span { start: i, end: i + 1 } });
                    i += 1;
                }
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push(Token { tok: Tok::Arrow, span: Span { start: i, end: i + 2 } });
                    i += 2;
                } else {
                    push_lex_error(text, i, diags);
                    i += 1;
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' | b'0'..=b'9' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    span: Span { start, end: i },
                });
            }
            _ => {
                push_lex_error(text, i, diags);
                // Skip the whole UTF-8 scalar so we never split a char.
                i += 1;
                while i < bytes.len() && (bytes[i] & 0xC0) == 0x80 {
                    i += 1;
                }
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { start: bytes.len(), end: bytes.len() },
    });
    out
}

fn push_lex_error(text: &str, at: usize, diags: &mut Vec<Diagnostic>) {
    let (line, col) = line_col(text, at);
    let ch = text[at..].chars().next().map_or("?".into(), |c| c.to_string());
    diags.push(Diagnostic {
        severity: Severity::Error,
        code: "E001",
        message: format!("unexpected character `{ch}`"),
        span: Span { start: at, end: at + ch.len() },
        line,
        col,
    });
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&mut self, code: &'static str, message: String, span: Span) {
        let (line, col) = line_col(self.text, span.start);
        self.diags.push(Diagnostic {
            severity: Severity::Error,
            code,
            message,
            span,
            line,
            col,
        });
    }

    /// Skip to just past the next `;`, or stop before `}` / end of input.
    fn sync(&mut self) {
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    return;
                }
                Tok::RBrace | Tok::Eof => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn expect(&mut self, want: Tok) -> bool {
        if *self.peek() == want {
            self.bump();
            true
        } else {
            let got = self.peek().describe();
            let span = self.span();
            self.error("E002", format!("expected {}, found {got}", want.describe()), span);
            false
        }
    }

    fn expect_ident(&mut self, what: &str) -> Option<Spanned<String>> {
        if let Tok::Ident(s) = self.peek() {
            let s = s.clone();
            let span = self.span();
            self.bump();
            Some(Spanned::new(s, span))
        } else {
            let got = self.peek().describe();
            let span = self.span();
            self.error("E002", format!("expected {what}, found {got}"), span);
            None
        }
    }

    fn parse_module(&mut self) -> CatSpecAst {
        let mut ast = CatSpecAst::default();
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(kw) if kw == "category" => {
                    self.bump();
                    if let Some(c) = self.parse_category() {
                        ast.categories.push(c);
                    }
                }
                Tok::Ident(kw) if kw == "functor" => {
                    self.bump();
                    if let Some(f) = self.parse_functor() {
                        ast.functors.push(f);
                    }
                }
                Tok::Ident(kw) if kw == "nattrans" => {
                    self.bump();
                    if let Some(t) = self.parse_nattrans() {
                        ast.nattrans.push(t);
                    }
                }
                other => {
                    let span = self.span();
                    self.error(
                        "E003",
                        format!(
                            "expected `category`, `functor`, or `nattrans`, found {}",
                            other.describe()
                        ),
                        span,
                    );
                    self.bump();
                    self.sync();
                }
            }
        }
        ast
    }

    fn parse_category(&mut self) -> Option<CategoryDecl> {
        let name = self.expect_ident("category name")?;
        if !self.expect(Tok::LBrace) {
            self.sync();
            return None;
        }
        let mut decl = CategoryDecl {
            name,
            objects: Vec::new(),
            morphs: Vec::new(),
            composes: Vec::new(),
            derive_closure: false,
            monoidal: None,
        };
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Some(decl);
                }
                Tok::Eof => {
                    let span = self.span();
                    self.error("E004", "unclosed `{` in category body".into(), span);
                    return Some(decl);
                }
                Tok::Ident(kw) if kw == "objects" => {
                    self.bump();
                    while let Tok::Ident(_) = self.peek() {
                        decl.objects.push(self.expect_ident("object name").unwrap());
                    }
                    if decl.objects.is_empty() {
                        let span = self.span();
                        self.error("E005", "`objects` lists no names".into(), span);
                    }
                    if !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "morph" => {
                    self.bump();
                    let ok = (|| {
                        let name = self.expect_ident("morphism name")?;
                        if !self.expect(Tok::Colon) {
                            return None;
                        }
                        let src = self.expect_ident("source object")?;
                        if !self.expect(Tok::Arrow) {
                            return None;
                        }
                        let tgt = self.expect_ident("target object")?;
                        decl.morphs.push(MorphDecl { name, src, tgt });
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "compose" => {
                    self.bump();
                    let ok = (|| {
                        let f = self.expect_ident("morphism name")?;
                        if !self.expect(Tok::Dot) {
                            return None;
                        }
                        let g = self.expect_ident("morphism name")?;
                        if !self.expect(Tok::Eq) {
                            return None;
                        }
                        let h = self.expect_ident("morphism name")?;
                        decl.composes.push(ComposeDecl { f, g, h });
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "derive" => {
                    self.bump();
                    decl.derive_closure = true;
                    if !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "monoidal" => {
                    self.bump();
                    let block = self.parse_monoidal_block();
                    if decl.monoidal.is_some() {
                        let span = self.span();
                        self.error("E006", "duplicate `monoidal` block".into(), span);
                    } else {
                        decl.monoidal = block;
                    }
                }
                other => {
                    let span = self.span();
                    self.error(
                        "E007",
                        format!(
                            "expected `objects`, `morph`, `compose`, `derive`, or `monoidal`, \
                             found {}",
                            other.describe()
                        ),
                        span,
                    );
                    self.bump();
                    self.sync();
                }
            }
        }
    }

    fn parse_monoidal_block(&mut self) -> Option<MonoidalBlock> {
        if !self.expect(Tok::LBrace) {
            self.sync();
            return None;
        }
        let mut block = MonoidalBlock::default();
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Some(block);
                }
                Tok::Eof => {
                    let span = self.span();
                    self.error("E004", "unclosed `{` in monoidal block".into(), span);
                    return Some(block);
                }
                Tok::Ident(kw) if kw == "unit" => {
                    self.bump();
                    if let Some(u) = self.expect_ident("unit object") {
                        if block.unit.is_some() {
                            self.error("E008", "duplicate `unit`".into(), u.span);
                        } else {
                            block.unit = Some(u);
                        }
                    }
                    if !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "tensor" => {
                    self.bump();
                    let ok = (|| {
                        let lhs = self.expect_ident("tensor operand")?;
                        if !self.expect(Tok::Star) {
                            return None;
                        }
                        let rhs = self.expect_ident("tensor operand")?;
                        if !self.expect(Tok::Eq) {
                            return None;
                        }
                        let out = self.expect_ident("tensor result")?;
                        block.tensor.push(TensorDecl { lhs, rhs, out });
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "lunitor" || kw == "runitor" => {
                    self.bump();
                    let ok = (|| {
                        let a = self.expect_ident("object")?;
                        if !self.expect(Tok::Eq) {
                            return None;
                        }
                        let f = self.expect_ident("morphism")?;
                        if kw == "lunitor" {
                            block.lunitor.push((a, f));
                        } else {
                            block.runitor.push((a, f));
                        }
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                Tok::Ident(kw) if kw == "assoc" => {
                    self.bump();
                    let ok = (|| {
                        let a = self.expect_ident("object")?;
                        let b = self.expect_ident("object")?;
                        let c = self.expect_ident("object")?;
                        if !self.expect(Tok::Eq) {
                            return None;
                        }
                        let f = self.expect_ident("morphism")?;
                        block.assoc.push(([a, b, c], f));
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                other => {
                    let span = self.span();
                    self.error(
                        "E009",
                        format!(
                            "expected `unit`, `tensor`, `lunitor`, `runitor`, or `assoc`, \
                             found {}",
                            other.describe()
                        ),
                        span,
                    );
                    self.bump();
                    self.sync();
                }
            }
        }
    }

    fn parse_functor(&mut self) -> Option<FunctorDecl> {
        let name = self.expect_ident("functor name")?;
        if !self.expect(Tok::Colon) {
            self.sync();
            return None;
        }
        let dom = self.expect_ident("source category")?;
        if !self.expect(Tok::Arrow) {
            self.sync();
            return None;
        }
        let cod = self.expect_ident("target category")?;
        if !self.expect(Tok::LBrace) {
            self.sync();
            return None;
        }
        let mut decl = FunctorDecl {
            name,
            dom,
            cod,
            on_objects: Vec::new(),
            on_morphisms: Vec::new(),
        };
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Some(decl);
                }
                Tok::Eof => {
                    let span = self.span();
                    self.error("E004", "unclosed `{` in functor body".into(), span);
                    return Some(decl);
                }
                Tok::Ident(kw) if kw == "obj" || kw == "morph" => {
                    self.bump();
                    let ok = (|| {
                        let a = self.expect_ident("name")?;
                        if !self.expect(Tok::Eq) {
                            return None;
                        }
                        let b = self.expect_ident("image name")?;
                        if kw == "obj" {
                            decl.on_objects.push((a, b));
                        } else {
                            decl.on_morphisms.push((a, b));
                        }
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                other => {
                    let span = self.span();
                    self.error(
                        "E010",
                        format!("expected `obj` or `morph`, found {}", other.describe()),
                        span,
                    );
                    self.bump();
                    self.sync();
                }
            }
        }
    }

    fn parse_nattrans(&mut self) -> Option<NatTransDecl> {
        let name = self.expect_ident("transformation name")?;
        if !self.expect(Tok::Colon) {
            self.sync();
            return None;
        }
        let source = self.expect_ident("source functor")?;
        if !self.expect(Tok::FatArrow) {
            self.sync();
            return None;
        }
        let target = self.expect_ident("target functor")?;
        if !self.expect(Tok::LBrace) {
            self.sync();
            return None;
        }
        let mut decl = NatTransDecl {
            name,
            source,
            target,
            components: Vec::new(),
        };
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    return Some(decl);
                }
                Tok::Eof => {
                    let span = self.span();
                    self.error("E004", "unclosed `{` in nattrans body".into(), span);
                    return Some(decl);
                }
                Tok::Ident(kw) if kw == "at" => {
                    self.bump();
                    let ok = (|| {
                        let a = self.expect_ident("object")?;
                        if !self.expect(Tok::Eq) {
                            return None;
                        }
                        let f = self.expect_ident("component morphism")?;
                        decl.components.push((a, f));
                        Some(())
                    })();
                    if ok.is_none() || !self.expect(Tok::Semi) {
                        self.sync();
                    }
                }
                other => {
                    let span = self.span();
                    self.error(
                        "E011",
                        format!("expected `at`, found {}", other.describe()),
                        span,
                    );
                    self.bump();
                    self.sync();
                }
            }
        }
    }
}

struct Reporter<'a> {
    text: &'a str,
    diags: &'a mut Vec<Diagnostic>,
}

impl Reporter<'_> {
    fn err(&mut self, code: &'static str, message: String, span: Span) {
        let (line, col) = line_col(self.text, span.start);
        self.diags.push(Diagnostic {
            severity: Severity::Error,
            code,
            message,
            span,
            line,
            col,
        });
    }

    fn check_obj(&mut self, objects: &BTreeMap<&str, Span>, name: &Spanned<String>) {
        if !objects.contains_key(name.value.as_str()) {
            self.err("E023", format!("unknown object `{}`", name.value), name.span);
        }
    }

    fn check_mor(&mut self, morphs: &BTreeMap<String, Span>, name: &Spanned<String>) {
        if !morphs.contains_key(name.value.as_str()) {
            self.err("E024", format!("unknown morphism `{}`", name.value), name.span);
        }
    }
}

/// Name-resolution pass run after parsing: unknown references and duplicate
/// declarations become diagnostics without elaborating anything.
fn validate_names(text: &str, ast: &CatSpecAst, diags: &mut Vec<Diagnostic>) {
    let mut r = Reporter { text, diags };
    let mut cat_names: BTreeMap<&str, &CategoryDecl> = BTreeMap::new();
    for c in &ast.categories {
        if cat_names.insert(&c.name.value, c).is_some() {
            r.err(
                "E020",
                format!("duplicate category `{}`", c.name.value),
                c.name.span,
            );
        }
        let mut objects: BTreeMap<&str, Span> = BTreeMap::new();
        for o in &c.objects {
            if o.value.starts_with("id_") {
                r.err(
                    "E021",
                    format!("object name `{}` uses the reserved `id_` prefix", o.value),
                    o.span,
                );
            }
            if objects.insert(&o.value, o.span).is_some() {
                r.err("E022", format!("duplicate object `{}`", o.value), o.span);
            }
        }
        let mut morphs: BTreeMap<String, Span> = BTreeMap::new();
        for o in &c.objects {
            morphs.insert(format!("id_{}", o.value), o.span);
        }
        for m in &c.morphs {
            r.check_obj(&objects, &m.src);
            r.check_obj(&objects, &m.tgt);
        }
        for m in &c.morphs {
            if m.name.value.starts_with("id_") {
                r.err(
                    "E021",
                    format!(
                        "morphism name `{}` uses the reserved `id_` prefix",
                        m.name.value
                    ),
                    m.name.span,
                );
            } else if morphs.insert(m.name.value.clone(), m.name.span).is_some() {
                r.err(
                    "E022",
                    format!("duplicate morphism `{}`", m.name.value),
                    m.name.span,
                );
            }
        }
        for e in &c.composes {
            r.check_mor(&morphs, &e.f);
            r.check_mor(&morphs, &e.g);
            r.check_mor(&morphs, &e.h);
        }
        if let Some(mb) = &c.monoidal {
            match &mb.unit {
                Some(u) => r.check_obj(&objects, u),
                None => r.err(
                    "E025",
                    "monoidal block is missing `unit`".into(),
                    c.name.span,
                ),
            }
            for t in &mb.tensor {
                let obj = objects.contains_key(t.lhs.value.as_str())
                    && objects.contains_key(t.rhs.value.as_str());
                let mor = morphs.contains_key(t.lhs.value.as_str())
                    && morphs.contains_key(t.rhs.value.as_str());
                if obj {
                    r.check_obj(&objects, &t.out);
                } else if mor {
                    r.check_mor(&morphs, &t.out);
                } else {
                    r.err(
                        "E026",
                        format!(
                            "`tensor {} * {}` must pair two objects or two morphisms",
                            t.lhs.value, t.rhs.value
                        ),
                        t.lhs.span,
                    );
                }
            }
            for (a, f) in mb.lunitor.iter().chain(mb.runitor.iter()) {
                r.check_obj(&objects, a);
                r.check_mor(&morphs, f);
            }
            for (abc, f) in &mb.assoc {
                for a in abc {
                    r.check_obj(&objects, a);
                }
                r.check_mor(&morphs, f);
            }
        }
    }
    let mut fun_names: BTreeMap<&str, &FunctorDecl> = BTreeMap::new();
    for f in &ast.functors {
        if fun_names.insert(&f.name.value, f).is_some() {
            r.err(
                "E020",
                format!("duplicate functor `{}`", f.name.value),
                f.name.span,
            );
        }
        for c in [&f.dom, &f.cod] {
            if !cat_names.contains_key(c.value.as_str()) {
                r.err("E027", format!("unknown category `{}`", c.value), c.span);
            }
        }
    }
    for t in &ast.nattrans {
        for f in [&t.source, &t.target] {
            if !fun_names.contains_key(f.value.as_str()) {
                r.err("E028", format!("unknown functor `{}`", f.value), f.span);
            }
        }
    }
}

/// Parse LF-normalized text. Total: always returns an AST (possibly partial)
/// plus diagnostics; an empty module is itself a diagnostic.
pub fn parse(text: &str) -> ParseOutcome {
    let normalized: String;
    let text = if text.contains('\r') {
        normalized = text.replace("\r\n", "\n").replace('\r', "\n");
        &normalized
    } else {
        text
    };
    let mut diags = Vec::new();
    let toks = lex(text, &mut diags);
    let mut p = Parser {
        text,
        toks,
        pos: 0,
        diags,
    };
    let ast = p.parse_module();
    let mut diags = p.diags;
    if ast.is_empty() && diags.is_empty() {
        diags.push(Diagnostic {
            severity: Severity::Error,
            code: "E000",
            message: "input contains no declarations".into(),
            span: Span::default(),
            line: 1,
            col: 1,
        });
    }
    validate_names(text, &ast, &mut diags);
    ParseOutcome { ast, diagnostics: diags }
}

/// Parse arbitrary bytes: invalid UTF-8 is replaced, never fatal.
pub fn parse_bytes(input: &[u8]) -> ParseOutcome {
    parse(&String::from_utf8_lossy(input))
}

// ---------------------------------------------------------------------------
// Elaboration

/// A category elaborated from source, with its name tables retained so
/// values can be printed back in terms of the original names.
#[derive(Debug, Clone)]
pub struct ElabCategory {
    pub cat: Arc<FinCat>,
    pub object_names: Vec<String>,
    pub morphism_names: Vec<String>,
    pub monoidal: Option<Arc<MonoidalCategory>>,
}

impl ElabCategory {
    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_names.iter().position(|n| n == name)
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.morphism_names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ElabModule {
    pub categories: Vec<(String, ElabCategory)>,
    pub functors: Vec<(String, Functor)>,
    pub nattrans: Vec<(String, NatTrans)>,
}

impl ElabModule {
    pub fn category(&self, name: &str) -> Option<&ElabCategory> {
        self.categories.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn functor(&self, name: &str) -> Option<&Functor> {
        self.functors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ElabError {
    /// Resolution or table-completion failures: the input itself is bad.
    #[error("{}", render_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    /// The input describes a complete structure that fails a law layer.
    #[error("category `{name}` fails validation: {error}")]
    Law {
        name: String,
        #[source]
        error: StagedError,
    },
}

fn render_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| format!("{}:{}: {} [{}]", d.line, d.col, d.message, d.code))
        .collect::<Vec<_>>()
        .join("\n")
}

struct CatScope {
    cat: Arc<FinCat>,
    object_names: Vec<String>,
    morphism_names: Vec<String>,
}

fn elaborate_category(
    text_diags: &mut Vec<Diagnostic>,
    decl: &CategoryDecl,
) -> Option<CatScope> {
    let mut err = |code: &'static str, message: String, span: Span| {
        text_diags.push(Diagnostic {
            severity: Severity::Error,
            code,
            message,
            span,
            line: 0,
            col: 0,
        });
    };
    let n = decl.objects.len();
    let object_names: Vec<String> = decl.objects.iter().map(|o| o.value.clone()).collect();
    let mut morphism_names: Vec<String> =
        object_names.iter().map(|o| format!("id_{o}")).collect();
    let mut src: Vec<ObjId> = (0..n).collect();
    let mut tgt: Vec<ObjId> = (0..n).collect();
    let obj_id = |name: &str| object_names.iter().position(|o| o == name);
    for m in &decl.morphs {
        morphism_names.push(m.name.value.clone());
        src.push(obj_id(&m.src.value)?);
        tgt.push(obj_id(&m.tgt.value)?);
    }
    let nm = morphism_names.len();
    let mor_id = |name: &str| morphism_names.iter().position(|m| m == name);

    // Composition table: identity-absorption first, then explicit equations,
    // then (optionally) associativity saturation.
    let mut table: Vec<Option<MorId>> = vec![None; nm * nm];
    for f in 0..nm {
        for g in 0..nm {
            if tgt[f] != src[g] {
                continue;
            }
            if f < n {
                table[f * nm + g] = Some(g);
            } else if g < n {
                table[f * nm + g] = Some(f);
            }
        }
    }
    let mut bad = false;
    for e in &decl.composes {
        let (f, g, h) = (
            mor_id(&e.f.value)?,
            mor_id(&e.g.value)?,
            mor_id(&e.h.value)?,
        );
        if tgt[f] != src[g] {
            err(
                "E030",
                format!("`{}` and `{}` are not composable", e.f.value, e.g.value),
                e.f.span,
            );
            bad = true;
            continue;
        }
        if src[h] != src[f] || tgt[h] != tgt[g] {
            err(
                "E031",
                format!(
                    "`{}` has the wrong endpoints for `{}.{}`",
                    e.h.value, e.f.value, e.g.value
                ),
                e.h.span,
            );
            bad = true;
            continue;
        }
        match table[f * nm + g] {
            Some(prev) if prev != h => {
                err(
                    "E032",
                    format!(
                        "conflicting equation: `{}.{}` is already `{}`",
                        e.f.value, e.g.value, morphism_names[prev]
                    ),
                    e.h.span,
                );
                bad = true;
            }
            _ => table[f * nm + g] = Some(h),
        }
    }
    if bad {
        return None;
    }
    if decl.derive_closure {
        // Associativity saturation: only forced values are ever filled in.
        loop {
            let mut changed = false;
            for f in 0..nm {
                for g in 0..nm {
                    if tgt[f] != src[g] {
                        continue;
                    }
                    for h in 0..nm {
                        if tgt[g] != src[h] {
                            continue;
                        }
                        let fg = table[f * nm + g];
                        let gh = table[g * nm + h];
                        let lhs = fg.and_then(|x| table[x * nm + h]);
                        let rhs = gh.and_then(|z| table[f * nm + z]);
                        match (lhs, rhs) {
                            (Some(a), Some(b)) if a != b => {
                                err(
                                    "E033",
                                    format!(
                                        "equations make composition non-associative at \
                                         `{}.{}.{}`",
                                        morphism_names[f], morphism_names[g], morphism_names[h]
                                    ),
                                    decl.name.span,
                                );
                                return None;
                            }
                            (Some(a), None) => {
                                if let Some(z) = gh {
                                    table[f * nm + z] = Some(a);
                                    changed = true;
                                }
                            }
                            (None, Some(b)) => {
                                if let Some(x) = fg {
                                    table[x * nm + h] = Some(b);
                                    changed = true;
                                }
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    let mut missing = Vec::new();
    for f in 0..nm {
        for g in 0..nm {
            if tgt[f] == src[g] && table[f * nm + g].is_none() {
                missing.push(format!("{}.{}", morphism_names[f], morphism_names[g]));
            }
        }
    }
    if !missing.is_empty() {
        let shown = missing.iter().take(4).cloned().collect::<Vec<_>>().join(", ");
        let more = if missing.len() > 4 {
            format!(" (+{} more)", missing.len() - 4)
        } else {
            String::new()
        };
        err(
            "E034",
            format!("missing composite: {shown}{more}"),
            decl.name.span,
        );
        return None;
    }
    let morphisms: Vec<(ObjId, ObjId)> = src.iter().copied().zip(tgt.iter().copied()).collect();
    let identity: Vec<MorId> = (0..n).collect();
    match FinCat::from_tables(n, morphisms, identity, table) {
        Ok(cat) => Some(CatScope {
            cat: Arc::new(cat),
            object_names,
            morphism_names,
        }),
        Err(e) => {
            err(
                "E035",
                format!("composition table is not a category: {e}"),
                decl.name.span,
            );
            None
        }
    }
}

fn elaborate_monoidal(
    diags: &mut Vec<Diagnostic>,
    decl: &CategoryDecl,
    block: &MonoidalBlock,
    scope: &CatScope,
) -> Result<Option<MonoidalCategory>, StagedError> {
    let mut err = |code: &'static str, message: String, span: Span| {
        diags.push(Diagnostic {
            severity: Severity::Error,
            code,
            message,
            span,
            line: 0,
            col: 0,
        });
    };
    let cat = &scope.cat;
    let n = cat.n_objects();
    let nm = cat.n_morphisms();
    let obj_id = |s: &str| scope.object_names.iter().position(|o| o == s);
    let mor_id = |s: &str| scope.morphism_names.iter().position(|m| m == s);
    let unit = match &block.unit {
        Some(u) => match obj_id(&u.value) {
            Some(i) => i,
            None => return Ok(None),
        },
        None => return Ok(None),
    };

    let mut omap: Vec<Option<ObjId>> = vec![None; n * n];
    let mut mmap: Vec<Option<MorId>> = vec![None; nm * nm];
    let mut bad = false;
    for t in &block.tensor {
        if let (Some(a), Some(b)) = (obj_id(&t.lhs.value), obj_id(&t.rhs.value)) {
            match obj_id(&t.out.value) {
                Some(c) => {
                    let slot = &mut omap[a * n + b];
                    if slot.is_some() && *slot != Some(c) {
                        err(
                            "E032",
                            format!(
                                "conflicting tensor entry for `{} * {}`",
                                t.lhs.value, t.rhs.value
                            ),
                            t.out.span,
                        );
                        bad = true;
                    } else {
                        *slot = Some(c);
                    }
                }
                None => bad = true,
            }
        } else if let (Some(f), Some(g)) = (mor_id(&t.lhs.value), mor_id(&t.rhs.value)) {
            match mor_id(&t.out.value) {
                Some(h) => {
                    let slot = &mut mmap[f * nm + g];
                    if slot.is_some() && *slot != Some(h) {
                        err(
                            "E032",
                            format!(
                                "conflicting tensor entry for `{} * {}`",
                                t.lhs.value, t.rhs.value
                            ),
                            t.out.span,
                        );
                        bad = true;
                    } else {
                        *slot = Some(h);
                    }
                }
                None => bad = true,
            }
        } else {
            bad = true; // already diagnosed by validate_names
        }
    }
    let mut missing_obj = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if omap[a * n + b].is_none() {
                missing_obj.push(format!(
                    "{} * {}",
                    scope.object_names[a], scope.object_names[b]
                ));
            }
        }
    }
    if !missing_obj.is_empty() {
        let shown = missing_obj.iter().take(4).cloned().collect::<Vec<_>>().join(", ");
        err(
            "E036",
            format!("tensor undefined on objects: {shown}"),
            decl.name.span,
        );
        bad = true;
    }
    if bad {
        return Ok(None);
    }
    let omap: Vec<ObjId> = omap.into_iter().map(Option::unwrap).collect();

    // Morphism tensor: identity pairs are forced by functoriality, and any
    // entry whose codomain hom-set is a singleton is forced by typing.
    let mut filled: Vec<Option<MorId>> = vec![None; nm * nm];
    let mut missing_mor = Vec::new();
    for f in 0..nm {
        for g in 0..nm {
            let s = omap[cat.src(f) * n + cat.src(g)];
            let t = omap[cat.tgt(f) * n + cat.tgt(g)];
            let forced = if cat.identity(cat.src(f)) == f && cat.identity(cat.src(g)) == g {
                Some(cat.identity(s))
            } else {
                let hom = cat.hom(s, t);
                if hom.len() == 1 {
                    Some(hom[0])
                } else {
                    None
                }
            };
            match (mmap[f * nm + g], forced) {
                (Some(h), _) => {
                    if cat.src(h) != s || cat.tgt(h) != t {
                        err(
                            "E031",
                            format!(
                                "tensor entry `{} * {}` has the wrong endpoints",
                                scope.morphism_names[f], scope.morphism_names[g]
                            ),
                            decl.name.span,
                        );
                        return Ok(None);
                    }
                    filled[f * nm + g] = Some(h);
                }
                (None, Some(h)) => filled[f * nm + g] = Some(h),
                (None, None) => missing_mor.push(format!(
                    "{} * {}",
                    scope.morphism_names[f], scope.morphism_names[g]
                )),
            }
        }
    }
    if !missing_mor.is_empty() {
        let shown = missing_mor.iter().take(4).cloned().collect::<Vec<_>>().join(", ");
        err(
            "E036",
            format!("tensor undefined on morphisms: {shown}"),
            decl.name.span,
        );
        return Ok(None);
    }

    let prod = product_category(cat, cat);
    let tensor_omap: Vec<ObjId> = prod
        .cat
        .objects()
        .map(|p| {
            let (x, y) = prod.obj_parts(p);
            omap[x * n + y]
        })
        .collect();
    let tensor_mmap: Vec<MorId> = prod
        .cat
        .morphisms()
        .map(|mp| {
            let (f, g) = prod.mor_parts(mp);
            filled[f * nm + g].unwrap()
        })
        .collect();
    let tensor = match Functor::new(
        Arc::clone(&prod.cat),
        Arc::clone(cat),
        tensor_omap,
        tensor_mmap,
    ) {
        Ok(t) => t,
        Err(e) => {
            err("E035", format!("tensor is not a map of tables: {e}"), decl.name.span);
            return Ok(None);
        }
    };

    // Cells: explicit entries win; a singleton hom-set forces the rest. The
    // inverse half of each witness is found by search, falling back to the
    // forward half so that non-invertible choices surface as law-layer
    // failures rather than input errors.
    let mut cell = |given: Option<MorId>, src_ob: ObjId, tgt_ob: ObjId, what: &str| {
        let fwd = match given {
            Some(f) => Some(f),
            None => {
                let hom = cat.hom(src_ob, tgt_ob);
                if hom.len() == 1 {
                    Some(hom[0])
                } else {
                    err(
                        "E037",
                        format!("{what} is not determined; add an explicit entry"),
                        decl.name.span,
                    );
                    None
                }
            }
        }?;
        let backward = cat.is_iso(fwd).map_or(fwd, |w| w.backward);
        Some(IsoWitness { forward: fwd, backward })
    };
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for x in 0..n {
        let given_l = block
            .lunitor
            .iter()
            .find(|(a, _)| obj_id(&a.value) == Some(x))
            .and_then(|(_, f)| mor_id(&f.value));
        let given_r = block
            .runitor
            .iter()
            .find(|(a, _)| obj_id(&a.value) == Some(x))
            .and_then(|(_, f)| mor_id(&f.value));
        let name = &scope.object_names[x];
        left.push(cell(given_l, omap[unit * n + x], x, &format!("lunitor {name}")));
        right.push(cell(given_r, omap[x * n + unit], x, &format!("runitor {name}")));
    }
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let given = block
                    .assoc
                    .iter()
                    .find(|([a, b, c], _)| {
                        obj_id(&a.value) == Some(x)
                            && obj_id(&b.value) == Some(y)
                            && obj_id(&c.value) == Some(z)
                    })
                    .and_then(|(_, f)| mor_id(&f.value));
                let s = omap[omap[x * n + y] * n + z];
                let t = omap[x * n + omap[y * n + z]];
                let name = format!(
                    "assoc {} {} {}",
                    scope.object_names[x], scope.object_names[y], scope.object_names[z]
                );
                assoc.push(cell(given, s, t, &name));
            }
        }
    }
    if left.iter().any(Option::is_none)
        || right.iter().any(Option::is_none)
        || assoc.iter().any(Option::is_none)
    {
        return Ok(None);
    }

    let m = assemble_monoidal(
        TensorData { tensor },
        UnitData { unit },
        UnitorData {
            left: left.into_iter().map(Option::unwrap).collect(),
            right: right.into_iter().map(Option::unwrap).collect(),
        },
        AssociatorData {
            components: assoc.into_iter().map(Option::unwrap).collect(),
        },
    )?;
    Ok(Some(m))
}

/// Elaborates a parsed module into checked values. Resolution failures are
/// `Invalid` (bad input); a completed structure failing a validation layer
/// is `Law` (lawful input shape, unlawful content).
pub fn elaborate(ast: &CatSpecAst) -> Result<ElabModule, ElabError> {
    let mut diags = Vec::new();
    // Re-run resolution so a hand-built AST cannot slip unresolved names
    // past the table builders (spans are kept; line/col need source text).
    validate_names("", ast, &mut diags);
    if !diags.is_empty() {
        return Err(ElabError::Invalid(diags));
    }
    let mut out = ElabModule::default();
    let mut law: Option<(String, StagedError)> = None;
    for decl in &ast.categories {
        let Some(scope) = elaborate_category(&mut diags, decl) else {
            continue;
        };
        let monoidal = match &decl.monoidal {
            Some(block) => match elaborate_monoidal(&mut diags, decl, block, &scope) {
                Ok(m) => m.map(Arc::new),
                Err(staged) => {
                    if law.is_none() {
                        law = Some((decl.name.value.clone(), staged));
                    }
                    None
                }
            },
            None => None,
        };
        out.categories.push((
            decl.name.value.clone(),
            ElabCategory {
                cat: scope.cat,
                object_names: scope.object_names,
                morphism_names: scope.morphism_names,
                monoidal,
            },
        ));
    }
    for f in &ast.functors {
        let (Some(dom), Some(cod)) = (
            out.category(&f.dom.value).cloned(),
            out.category(&f.cod.value).cloned(),
        ) else {
            continue;
        };
        let mut omap = vec![None; dom.cat.n_objects()];
        for (a, b) in &f.on_objects {
            match (dom.object_id(&a.value), cod.object_id(&b.value)) {
                (Some(x), Some(y)) => omap[x] = Some(y),
                _ => diags.push(Diagnostic {
                    severity: Severity::Error,
                    code: "E023",
                    message: format!("unknown object in functor `{}`", f.name.value),
                    span: a.span,
                    line: 0,
                    col: 0,
                }),
            }
        }
        let mut mmap = vec![None; dom.cat.n_morphisms()];
        for (a, b) in &f.on_morphisms {
            match (dom.morphism_id(&a.value), cod.morphism_id(&b.value)) {
                (Some(x), Some(y)) => mmap[x] = Some(y),
                _ => diags.push(Diagnostic {
                    severity: Severity::Error,
                    code: "E024",
                    message: format!("unknown morphism in functor `{}`", f.name.value),
                    span: a.span,
                    line: 0,
                    col: 0,
                }),
            }
        }
        // Identity images are forced once the object images are known.
        for x in 0..dom.cat.n_objects() {
            if let (None, Some(y)) = (mmap[dom.cat.identity(x)], omap[x]) {
                mmap[dom.cat.identity(x)] = Some(cod.cat.identity(y));
            }
        }
        let (missing_o, missing_m) = (
            omap.iter().any(Option::is_none),
            mmap.iter().any(Option::is_none),
        );
        if missing_o || missing_m {
            diags.push(Diagnostic {
                severity: Severity::Error,
                code: "E038",
                message: format!("functor `{}` is not total", f.name.value),
                span: f.name.span,
                line: 0,
                col: 0,
            });
            continue;
        }
        match Functor::new(
            Arc::clone(&dom.cat),
            Arc::clone(&cod.cat),
            omap.into_iter().map(Option::unwrap).collect(),
            mmap.into_iter().map(Option::unwrap).collect(),
        ) {
            Ok(fun) => {
                let report = fun.check_laws();
                if report.is_ok() {
                    out.functors.push((f.name.value.clone(), fun));
                } else {
                    diags.push(Diagnostic {
                        severity: Severity::Error,
                        code: "E039",
                        message: format!(
                            "functor `{}` violates functor laws:\n{report}",
                            f.name.value
                        ),
                        span: f.name.span,
                        line: 0,
                        col: 0,
                    });
                }
            }
            Err(e) => diags.push(Diagnostic {
                severity: Severity::Error,
                code: "E035",
                message: format!("functor `{}`: {e}", f.name.value),
                span: f.name.span,
                line: 0,
                col: 0,
            }),
        }
    }
    for t in &ast.nattrans {
        let (Some(source), Some(target)) = (
            out.functor(&t.source.value).cloned(),
            out.functor(&t.target.value).cloned(),
        ) else {
            continue;
        };
        // Component names live in the shared codomain category.
        let cod_name = ast
            .functors
            .iter()
            .find(|f| f.name.value == t.source.value)
            .map(|f| f.cod.value.clone())
            .unwrap_or_default();
        let dom_name = ast
            .functors
            .iter()
            .find(|f| f.name.value == t.source.value)
            .map(|f| f.dom.value.clone())
            .unwrap_or_default();
        let (Some(cod_scope), Some(dom_scope)) =
            (out.category(&cod_name).cloned(), out.category(&dom_name).cloned())
        else {
            continue;
        };
        let mut comps = vec![None; dom_scope.cat.n_objects()];
        for (a, f) in &t.components {
            match (dom_scope.object_id(&a.value), cod_scope.morphism_id(&f.value)) {
                (Some(x), Some(c)) => comps[x] = Some(c),
                _ => diags.push(Diagnostic {
                    severity: Severity::Error,
                    code: "E024",
                    message: format!("unknown name in nattrans `{}`", t.name.value),
                    span: a.span,
                    line: 0,
                    col: 0,
                }),
            }
        }
        if comps.iter().any(Option::is_none) {
            diags.push(Diagnostic {
                severity: Severity::Error,
                code: "E038",
                message: format!("nattrans `{}` is not total", t.name.value),
                span: t.name.span,
                line: 0,
                col: 0,
            });
            continue;
        }
        match NatTrans::new(
            source,
            target,
            comps.into_iter().map(Option::unwrap).collect(),
        ) {
            Ok(nt) => out.nattrans.push((t.name.value.clone(), nt)),
            Err(e) => diags.push(Diagnostic {
                severity: Severity::Error,
                code: "E035",
                message: format!("nattrans `{}`: {e}", t.name.value),
                span: t.name.span,
                line: 0,
                col: 0,
            }),
        }
    }
    if !diags.is_empty() {
        return Err(ElabError::Invalid(diags));
    }
    if let Some((name, error)) = law {
        return Err(ElabError::Law { name, error });
    }
    Ok(out)
}

/// Parse + elaborate in one step.
pub fn load(text: &str) -> Result<ElabModule, ElabError> {
    let outcome = parse(text);
    if !outcome.is_ok() {
        return Err(ElabError::Invalid(outcome.diagnostics));
    }
    elaborate(&outcome.ast)
}

// ---------------------------------------------------------------------------
// Canonical printing

/// Deterministic source form: declarations sorted by id, forced entries
/// omitted (identity composites, singleton-hom cells, identity-pair
/// tensors). Parsing the output elaborates back to an equal value.
pub fn print_canonical(name: &str, c: &ElabCategory) -> String {
    let cat = &c.cat;
    let n = cat.n_objects();
    let nm = cat.n_morphisms();
    let on = &c.object_names;
    let mn = &c.morphism_names;
    let mut s = String::new();
    let _ = writeln!(s, "category {name} {{");
    let _ = writeln!(s, "  objects {};", on.join(" "));
    for f in 0..nm {
        if (0..n).any(|x| cat.identity(x) == f) {
            continue;
        }
        let _ = writeln!(s, "  morph {}: {} -> {};", mn[f], on[cat.src(f)], on[cat.tgt(f)]);
    }
    for f in 0..nm {
        for g in 0..nm {
            if cat.tgt(f) != cat.src(g) {
                continue;
            }
            let id_involved =
                (0..n).any(|x| cat.identity(x) == f) || (0..n).any(|x| cat.identity(x) == g);
            if id_involved {
                continue;
            }
            let _ = writeln!(s, "  compose {}.{} = {};", mn[f], mn[g], mn[cat.comp(f, g)]);
        }
    }
    if let Some(m) = &c.monoidal {
        let _ = writeln!(s, "  monoidal {{");
        let _ = writeln!(s, "    unit {};", on[m.unit()]);
        for x in 0..n {
            for y in 0..n {
                let _ = writeln!(s, "    tensor {} * {} = {};", on[x], on[y], on[m.tensor_obj(x, y)]);
            }
        }
        for f in 0..nm {
            for g in 0..nm {
                let both_id = (0..n).any(|x| cat.identity(x) == f)
                    && (0..n).any(|x| cat.identity(x) == g);
                let h = m.tensor_mor(f, g);
                if both_id || cat.hom(cat.src(h), cat.tgt(h)).len() == 1 {
                    continue;
                }
                let _ = writeln!(s, "    tensor {} * {} = {};", mn[f], mn[g], mn[h]);
            }
        }
        for x in 0..n {
            let l = m.lunitor_at(x).forward;
            if cat.hom(cat.src(l), cat.tgt(l)).len() != 1 {
                let _ = writeln!(s, "    lunitor {} = {};", on[x], mn[l]);
            }
            let r = m.runitor_at(x).forward;
            if cat.hom(cat.src(r), cat.tgt(r)).len() != 1 {
                let _ = writeln!(s, "    runitor {} = {};", on[x], mn[r]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = m.assoc_at(x, y, z).forward;
                    if cat.hom(cat.src(a), cat.tgt(a)).len() != 1 {
                        let _ = writeln!(
                            s,
                            "    assoc {} {} {} = {};",
                            on[x], on[y], on[z], mn[a]
                        );
                    }
                }
            }
        }
        let _ = writeln!(s, "  }}");
    }
    s.push_str("}\n");
    s
}

/// Prints every category of a module in order.
pub fn print_module(m: &ElabModule) -> String {
    m.categories
        .iter()
        .map(|(name, c)| print_canonical(name, c))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Wraps a bare category (integer names) so it can be printed.
pub fn name_category(cat: &Arc<FinCat>, monoidal: Option<Arc<MonoidalCategory>>) -> ElabCategory {
    let n = cat.n_objects();
    let object_names: Vec<String> = (0..n).map(|x| format!("x{x}")).collect();
    let morphism_names: Vec<String> = cat
        .morphisms()
        .map(|f| {
            if let Some(x) = (0..n).find(|&x| cat.identity(x) == f) {
                format!("id_x{x}")
            } else {
                format!("m{f}")
            }
        })
        .collect();
    ElabCategory {
        cat: Arc::clone(cat),
        object_names,
        morphism_names,
        monoidal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal::check_monoidal_laws;

    const Z2D_SRC: &str = "\
category z2d {
  objects e s;
  monoidal {
    unit e;
    tensor e * e = e; tensor e * s = s;
    tensor s * e = s; tensor s * s = e;
  }
}
";

    const WI_SRC: &str = "\
category wi {
  objects a b;
  morph f: a -> b;
  morph g: b -> a;
  compose f.g = id_a;
  compose g.f = id_b;
}
";

    #[test]
    fn terminal_category_parses_and_elaborates() {
        let out = parse("category pt { objects only; }");
        assert!(out.is_ok(), "{:?}", out.diagnostics);
        assert_eq!(out.ast.categories.len(), 1);
        assert_eq!(out.ast.categories[0].objects.len(), 1);
        assert!(out.ast.categories[0].morphs.is_empty());
        let module = elaborate(&out.ast).unwrap();
        let c = module.category("pt").unwrap();
        assert_eq!(c.cat.n_objects(), 1);
        assert_eq!(c.cat.n_morphisms(), 1);
    }

    #[test]
    fn unknown_object_has_span_and_position() {
        let src = "category c { objects a; morph f: a -> zzz; }";
        let out = parse(src);
        assert!(!out.is_ok());
        let d = out
            .diagnostics
            .iter()
            .find(|d| d.message.contains("unknown object `zzz`"))
            .unwrap();
        assert_eq!(&src[d.span.start..d.span.end], "zzz");
        assert_eq!((d.line, d.col), (1, 39));
    }

    #[test]
    fn walking_iso_missing_inverse_is_missing_composite() {
        let src = "\
category wi {
  objects a b;
  morph f: a -> b;
  morph g: b -> a;
  compose f.g = id_a;
}
";
        match load(src) {
            Err(ElabError::Invalid(diags)) => {
                assert!(
                    diags.iter().any(|d| d.message.contains("missing composite")),
                    "{diags:?}"
                );
            }
            other => panic!("expected missing composite, got {other:?}"),
        }
        let full = load(WI_SRC).unwrap();
        assert_eq!(full.category("wi").unwrap().cat.n_morphisms(), 4);
    }

    #[test]
    fn z2d_monoidal_source_elaborates_lawfully() {
        let module = load(Z2D_SRC).unwrap();
        let c = module.category("z2d").unwrap();
        let m = c.monoidal.as_ref().unwrap();
        assert!(check_monoidal_laws(m).is_ok());
        assert_eq!(m.tensor_obj(1, 1), 0);
    }

    #[test]
    fn bz2_with_sigma_associator_fails_law_layer() {
        let src = "\
category bz2 {
  objects e;
  morph s: e -> e;
  compose s.s = id_e;
  monoidal {
    unit e;
    tensor e * e = e;
    tensor s * s = id_e; tensor s * id_e = s; tensor id_e * s = s;
    lunitor e = id_e;
    runitor e = id_e;
    assoc e e e = s;
  }
}
";
        match load(src) {
            Err(ElabError::Law { name, error }) => {
                assert_eq!(name, "bz2");
                let text = error.to_string();
                assert!(text.contains("law"), "{text}");
            }
            other => panic!("expected law failure, got {other:?}"),
        }
    }

    #[test]
    fn derive_closes_cyclic_group_table() {
        // Z/3 delooping from the two generator equations plus derive.
        let src = "\
category bz3 {
  objects e;
  morph r: e -> e;
  morph r2: e -> e;
  compose r.r = r2;
  compose r.r2 = id_e;
  derive;
}
";
        let module = load(src).unwrap();
        let cat = &module.category("bz3").unwrap().cat;
        assert_eq!(cat.n_morphisms(), 3);
        // r2.r2 was never written down; associativity forces it to r.
        let r = module.category("bz3").unwrap().morphism_id("r").unwrap();
        let r2 = module.category("bz3").unwrap().morphism_id("r2").unwrap();
        assert_eq!(cat.comp(r2, r2), r);
    }

    #[test]
    fn conflicting_equation_is_reported() {
        let src = "\
category c {
  objects a;
  morph f: a -> a;
  compose f.f = id_a;
  compose f.f = f;
}
";
        match load(src) {
            Err(ElabError::Invalid(diags)) => {
                assert!(diags.iter().any(|d| d.code == "E032"), "{diags:?}");
            }
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_ast_exact_and_print_idempotent() {
        for src in [Z2D_SRC, WI_SRC] {
            let first = parse(src);
            assert!(first.is_ok());
            let module = elaborate(&first.ast).unwrap();
            let printed = print_module(&module);
            let second = parse(&printed);
            assert!(second.is_ok(), "{:?}", second.diagnostics);
            let reprinted = print_module(&elaborate(&second.ast).unwrap());
            assert_eq!(printed, reprinted);
        }
        // Canonical output is already canonical: parse(print(x)) == x as AST.
        let module = load(Z2D_SRC).unwrap();
        let printed = print_module(&module);
        let mut a = parse(&printed).ast;
        let mut b = parse(&print_module(&elaborate(&a).unwrap())).ast;
        a.strip_spans();
        b.strip_spans();
        assert_eq!(a, b);
    }

    #[test]
    fn functor_and_nattrans_blocks_elaborate() {
        let src = "\
category wi {
  objects a b;
  morph f: a -> b;
  morph g: b -> a;
  compose f.g = id_a;
  compose g.f = id_b;
}
category pt {
  objects o;
}
functor collapse: wi -> pt {
  obj a = o; obj b = o;
  morph f = id_o; morph g = id_o;
}
functor collapse2: wi -> pt {
  obj a = o; obj b = o;
  morph f = id_o; morph g = id_o;
}
nattrans t: collapse => collapse2 {
  at a = id_o; at b = id_o;
}
";
        let module = load(src).unwrap();
        assert_eq!(module.functors.len(), 2);
        assert_eq!(module.nattrans.len(), 1);
        let (_, nt) = &module.nattrans[0];
        assert!(nt.check_naturality().is_ok());
    }

    #[test]
    fn unlawful_functor_block_is_rejected() {
        let src = "\
category wi {
  objects a b;
  morph f: a -> b;
  morph g: b -> a;
  compose f.g = id_a;
  compose g.f = id_b;
}
category bz2 {
  objects e;
  morph s: e -> e;
  compose s.s = id_e;
}
functor bad: wi -> bz2 {
  obj a = e; obj b = e;
  morph f = s; morph g = id_e;
}
";
        match load(src) {
            Err(ElabError::Invalid(diags)) => {
                assert!(diags.iter().any(|d| d.code == "E039"), "{diags:?}");
            }
            other => panic!("expected functor-law diagnostics, got {other:?}"),
        }
    }

    #[test]
    fn reserved_and_duplicate_names_are_diagnosed() {
        let out = parse("category c { objects a a; morph id_a: a -> a; }");
        assert!(!out.is_ok());
        let codes: Vec<_> = out.diagnostics.iter().map(|d| d.code).collect();
        assert!(codes.contains(&"E022"));
        assert!(codes.contains(&"E021"));
    }

    #[test]
    fn parser_never_panics_and_always_reports() {
        for src in [
            "",
            "garbage !!!",
            "category",
            "category c {",
            "category c { objects ; }",
            "category c { objects a; morph f a b; }",
            "category c { objects a; monoidal { tensor a * = a; } }",
            "\u{1F980} category c { objects a; }",
        ] {
            let out = parse(src);
            assert!(
                !out.diagnostics.is_empty() || !out.ast.is_empty(),
                "no AST and no diagnostics for {src:?}"
            );
        }
        // Raw byte fuzz smoke (the acceptance gate runs the large version).
        let mut state = 0x2545F4914F6CDD1Du64;
        for _ in 0..500 {
            let len = (state % 64) as usize;
            let mut bytes = Vec::with_capacity(len);
            for _ in 0..len {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                bytes.push((state >> 33) as u8);
            }
            let _ = parse_bytes(&bytes);
        }
    }

    #[test]
    fn named_wrapper_prints_fixture_categories() {
        for (name, cat) in crate::fixtures::all_categories() {
            let printed = print_canonical(name, &name_category(&cat, None));
            let module = load(&printed).unwrap_or_else(|e| panic!("{name}: {e}"));
            let c = module.category(name).unwrap();
            assert_eq!(c.cat.as_ref(), cat.as_ref(), "{name}");
        }
    }
}
