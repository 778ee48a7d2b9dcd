//! Named finite carriers.
//!
//! A [`Carrier`] is an ordered list of distinct element labels. Relations are
//! typed by the carriers at both ends, and two carriers are interchangeable
//! only when they are structurally identical (same name, same elements, same
//! kind). Powerset carriers additionally remember their base carrier; their
//! elements are all subsets of the base, listed in ascending bitmask order,
//! so the index of a powerset element *is* its subset mask.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Default bound on the size of a base carrier when forming its powerset.
pub const DEFAULT_POW_CAP: usize = 6;

#[derive(Debug, PartialEq, Eq, Hash)]
enum Kind {
    Base,
    Powerset(Carrier),
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    name: String,
    elements: Vec<String>,
    kind: Kind,
}

/// A named, ordered finite set of element labels.
///
/// Cloning is cheap (shared pointer); equality is structural.
#[derive(Clone, Eq)]
pub struct Carrier(Arc<Inner>);

/// Public view of a carrier's kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierKind<'a> {
    Base,
    Powerset(&'a Carrier),
}

impl Carrier {
    /// Builds a base carrier from a name and its element labels.
    ///
    /// Fails on an empty element list or a repeated label.
    pub fn new(
        name: impl Into<String>,
        elements: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, Error> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        Ok(Carrier(Arc::new(Inner {
            name: name.into(),
            elements,
            kind: Kind::Base,
        })))
    }

    /// Builds the powerset carrier of `base`. Size checks live in
    /// [`crate::powerset::pow_carrier`]; this constructor only lays out the
    /// 2^n subsets in ascending mask order.
    pub(crate) fn new_powerset(base: &Carrier) -> Self {
        let n = base.len();
        let elements = (0..1usize << n).map(|m| subset_label(base, m)).collect();
        Carrier(Arc::new(Inner {
            name: format!("P({})", base.name()),
            elements,
            kind: Kind::Powerset(base.clone()),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn len(&self) -> usize {
        self.0.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.0.elements
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.elements[index]
    }

    /// Index of a label, or `None` when the label is not an element.
    pub fn element_index(&self, label: &str) -> Option<usize> {
        self.0.elements.iter().position(|e| e == label)
    }

    pub fn kind(&self) -> CarrierKind<'_> {
        match &self.0.kind {
            Kind::Base => CarrierKind::Base,
            Kind::Powerset(b) => CarrierKind::Powerset(b),
        }
    }

    /// The base carrier when this is a powerset carrier.
    pub fn base(&self) -> Option<&Carrier> {
        match &self.0.kind {
            Kind::Base => None,
            Kind::Powerset(b) => Some(b),
        }
    }

    pub fn is_powerset(&self) -> bool {
        self.base().is_some()
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for Carrier {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Carrier({} = {})",
            self.name(),
            self.elements().join(" ")
        )
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Renders the subset of `base` described by `mask` as `{e1,e2}`, elements in
/// carrier order, the empty subset as `{}`.
pub fn subset_label(base: &Carrier, mask: usize) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for (i, e) in base.elements().iter().enumerate() {
        if mask >> i & 1 == 1 {
            if !first {
                out.push(',');
            }
            out.push_str(e);
            first = false;
        }
    }
    out.push('}');
    out
}

/// Iterates the set bit positions of `mask` in ascending order.
pub fn mask_bits(mask: usize) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}
