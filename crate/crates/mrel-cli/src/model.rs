//! The model text format: named carriers and multirelations.
//!
//! ```text
//! # a two-element carrier and one multirelation on it
//! carrier X = a b
//! mrel f : X -> P(X)
//! a -> {a,b}
//! b -> {}
//! ```
//!
//! `carrier NAME = e1 e2 ...` declares a base carrier. `mrel NAME : SRC ->
//! P(BASE)` opens a multirelation over declared carriers; every following
//! `elem -> {e,...}` line adds one pair, with `{}` for the empty set. Names
//! and element labels are ASCII identifiers (letters, digits, underscore);
//! `carrier` and `mrel` are reserved. `#` starts a comment that runs to the
//! end of the line. Lines may end in LF or CRLF.

use mrel_core::{
    pow_carrier_capped, subset_label, Carrier, Error as CoreError, Multirelation, Relation,
    DEFAULT_POW_CAP,
};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("line {line}: unknown carrier {name:?}")]
    UnknownCarrier { line: usize, name: String },

    #[error("line {line}: unknown element {label:?} in carrier {carrier:?}")]
    UnknownElement {
        line: usize,
        carrier: String,
        label: String,
    },

    #[error("line {line}: duplicate name {name:?}")]
    DuplicateName { line: usize, name: String },

    #[error("line {line}: {source}")]
    Invalid { line: usize, source: CoreError },
}

/// A multirelation as declared in a model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedMrel {
    pub name: String,
    pub mrel: Multirelation,
}

/// Declared carriers and multirelations, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    carriers: Vec<Carrier>,
    mrels: Vec<NamedMrel>,
}

impl Model {
    /// Assembles a model from parts, enforcing the same invariants as the
    /// parser: names unique per kind, every multirelation over declared
    /// carriers. Errors report line 0.
    pub fn new(
        carriers: Vec<Carrier>,
        mrels: Vec<(String, Multirelation)>,
    ) -> Result<Self, ModelError> {
        let mut model = Model::default();
        for c in carriers {
            if model.carrier(c.name()).is_some() {
                return Err(ModelError::DuplicateName {
                    line: 0,
                    name: c.name().into(),
                });
            }
            model.carriers.push(c);
        }
        for (name, mrel) in mrels {
            if model.mrel(&name).is_some() {
                return Err(ModelError::DuplicateName { line: 0, name });
            }
            for c in [mrel.source(), mrel.target_base()] {
                if model.carrier(c.name()) != Some(c) {
                    return Err(ModelError::UnknownCarrier {
                        line: 0,
                        name: c.name().into(),
                    });
                }
            }
            model.mrels.push(NamedMrel { name, mrel });
        }
        Ok(model)
    }

    pub fn carrier(&self, name: &str) -> Option<&Carrier> {
        self.carriers.iter().find(|c| c.name() == name)
    }

    pub fn mrel(&self, name: &str) -> Option<&Multirelation> {
        self.mrels.iter().find(|m| m.name == name).map(|m| &m.mrel)
    }

    pub fn carriers(&self) -> &[Carrier] {
        &self.carriers
    }

    pub fn mrels(&self) -> &[NamedMrel] {
        &self.mrels
    }

    /// Parses the text format with the default powerset cap. Errors carry
    /// 1-based line numbers; syntax errors also carry 1-based character
    /// columns.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        Self::parse_capped(text, DEFAULT_POW_CAP)
    }

    /// Like [`Model::parse`], allowing base carriers of up to `pow_cap`
    /// elements.
    pub fn parse_capped(text: &str, pow_cap: usize) -> Result<Self, ModelError> {
        let mut model = Model::default();
        let mut open: Option<OpenMrel> = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(cut) => &raw[..cut],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let mut cur = Cursor {
                line,
                pos: 0,
                lineno,
            };
            let word = cur.ident("a declaration or pair")?;
            match word {
                "carrier" => {
                    if let Some(m) = open.take() {
                        model.mrels.push(m.finish()?);
                    }
                    let name = cur.ident("a carrier name")?;
                    if model.carrier(name).is_some() {
                        return Err(ModelError::DuplicateName {
                            line: lineno,
                            name: name.into(),
                        });
                    }
                    cur.expect("=")?;
                    let mut elems = Vec::new();
                    while !cur.at_end() {
                        elems.push(cur.ident("an element label")?);
                    }
                    let carrier =
                        Carrier::new(name, elems).map_err(|source| ModelError::Invalid {
                            line: lineno,
                            source,
                        })?;
                    model.carriers.push(carrier);
                }
                "mrel" => {
                    if let Some(m) = open.take() {
                        model.mrels.push(m.finish()?);
                    }
                    let name = cur.ident("a multirelation name")?;
                    if model.mrel(name).is_some() {
                        return Err(ModelError::DuplicateName {
                            line: lineno,
                            name: name.into(),
                        });
                    }
                    cur.expect(":")?;
                    let src = cur.ident("a source carrier name")?;
                    cur.expect("->")?;
                    cur.expect("P(")?;
                    let base = cur.ident("a target carrier name")?;
                    cur.expect(")")?;
                    cur.end()?;
                    let src = model.lookup_carrier(src, lineno)?.clone();
                    let base = model.lookup_carrier(base, lineno)?.clone();
                    open = Some(OpenMrel {
                        name: name.into(),
                        src,
                        base,
                        pairs: Vec::new(),
                        line: lineno,
                        pow_cap,
                    });
                }
                elem => {
                    let m = open.as_mut().ok_or_else(|| ModelError::Syntax {
                        line: lineno,
                        col: 1,
                        msg: "pair line outside a multirelation declaration".into(),
                    })?;
                    let i =
                        m.src
                            .element_index(elem)
                            .ok_or_else(|| ModelError::UnknownElement {
                                line: lineno,
                                carrier: m.src.name().into(),
                                label: elem.into(),
                            })?;
                    cur.expect("->")?;
                    cur.expect("{")?;
                    let mut mask = 0usize;
                    if !cur.peek("}") {
                        loop {
                            let label = cur.ident("an element label")?;
                            let j = m.base.element_index(label).ok_or_else(|| {
                                ModelError::UnknownElement {
                                    line: lineno,
                                    carrier: m.base.name().into(),
                                    label: label.into(),
                                }
                            })?;
                            mask |= 1 << j;
                            if !cur.peek(",") {
                                break;
                            }
                            cur.expect(",")?;
                        }
                    }
                    cur.expect("}")?;
                    cur.end()?;
                    m.pairs.push((i, mask));
                }
            }
        }
        if let Some(m) = open.take() {
            model.mrels.push(m.finish()?);
        }
        Ok(model)
    }

    /// Renders the canonical text form: carriers first, then each
    /// multirelation with its pairs sorted by source index and subset mask.
    /// `Model::parse` inverts this exactly.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.carriers {
            write!(out, "carrier {} =", c.name()).unwrap();
            for e in c.elements() {
                write!(out, " {e}").unwrap();
            }
            out.push('\n');
        }
        for nm in &self.mrels {
            let src = nm.mrel.source();
            let base = nm.mrel.target_base();
            write!(
                out,
                "\nmrel {} : {} -> P({})\n",
                nm.name,
                src.name(),
                base.name()
            )
            .unwrap();
            for (i, mask) in nm.mrel.rel().iter_pairs() {
                writeln!(out, "{} -> {}", src.label(i), subset_label(base, mask)).unwrap();
            }
        }
        out
    }

    fn lookup_carrier(&self, name: &str, line: usize) -> Result<&Carrier, ModelError> {
        self.carrier(name)
            .ok_or_else(|| ModelError::UnknownCarrier {
                line,
                name: name.into(),
            })
    }
}

struct OpenMrel {
    name: String,
    src: Carrier,
    base: Carrier,
    pairs: Vec<(usize, usize)>,
    line: usize,
    pow_cap: usize,
}

impl OpenMrel {
    fn finish(self) -> Result<NamedMrel, ModelError> {
        let pz =
            pow_carrier_capped(&self.base, self.pow_cap).map_err(|source| ModelError::Invalid {
                line: self.line,
                source,
            })?;
        let rel = Relation::from_index_pairs(&self.src, &pz, self.pairs);
        let mrel = Multirelation::new(rel).map_err(|source| ModelError::Invalid {
            line: self.line,
            source,
        })?;
        Ok(NamedMrel {
            name: self.name,
            mrel,
        })
    }
}

/// A scanner over one comment-stripped line.
struct Cursor<'a> {
    line: &'a str,
    pos: usize,
    lineno: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.line[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn col(&self) -> usize {
        self.line[..self.pos].chars().count() + 1
    }

    fn error(&self, msg: String) -> ModelError {
        ModelError::Syntax {
            line: self.lineno,
            col: self.col(),
            msg,
        }
    }

    fn rest(&self) -> &'a str {
        &self.line[self.pos..]
    }

    /// Consumes an identifier, or fails naming what was expected.
    fn ident(&mut self, what: &str) -> Result<&'a str, ModelError> {
        self.skip_ws();
        let end = self
            .rest()
            .char_indices()
            .find(|&(_, c)| !is_ident_char(c))
            .map_or(self.rest().len(), |(i, _)| i);
        if end == 0 {
            return Err(self.error(format!("expected {what}")));
        }
        let word = &self.rest()[..end];
        self.pos += end;
        Ok(word)
    }

    fn peek(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(tok)
    }

    fn expect(&mut self, tok: &str) -> Result<(), ModelError> {
        if !self.peek(tok) {
            return Err(self.error(format!("expected {tok:?}")));
        }
        self.pos += tok.len();
        Ok(())
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn end(&mut self) -> Result<(), ModelError> {
        if !self.at_end() {
            return Err(self.error("unexpected trailing input".into()));
        }
        Ok(())
    }
}
