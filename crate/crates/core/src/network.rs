//! Network model: elements over 1-based wires and the structural operations
//! that do not need evaluation (validation, mirroring, decomposition).

use std::fmt;

/// A wire index. Wires are 1-based and wire 1 is drawn topmost.
pub type Wire = usize;

/// One element of a comparison-exchange network.
///
/// Endpoints are stored as given; [`Network::validate`] reports elements whose
/// endpoints are not strictly increasing or fall outside the network order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    /// A plain compare-exchange: the minimum ends on the first wire.
    Link(Wire, Wire),
    /// Fused `(a,b),(b,c)` pair. If `(a,b)` swaps, `(b,c)` is elided.
    Fused2(Wire, Wire, Wire),
    /// Fused `(a,b),(b,c),(c,d)` triple. The centre `(b,c)` runs first; if it
    /// swaps, both wings are elided, otherwise the disjoint wings run.
    Fused3(Wire, Wire, Wire, Wire),
}

/// Discriminant of an [`Element`], without the endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Link,
    Fused2,
    Fused3,
}

impl Element {
    /// Builds the element kind matching the number of endpoints (2, 3 or 4).
    pub fn from_wires(wires: &[Wire]) -> Option<Element> {
        match *wires {
            [a, b] => Some(Element::Link(a, b)),
            [a, b, c] => Some(Element::Fused2(a, b, c)),
            [a, b, c, d] => Some(Element::Fused3(a, b, c, d)),
            _ => None,
        }
    }

    pub fn kind(&self) -> ElementKind {
        match self {
            Element::Link(..) => ElementKind::Link,
            Element::Fused2(..) => ElementKind::Fused2,
            Element::Fused3(..) => ElementKind::Fused3,
        }
    }

    pub fn wires(&self) -> Wires {
        match *self {
            Element::Link(a, b) => Wires::new(&[a, b]),
            Element::Fused2(a, b, c) => Wires::new(&[a, b, c]),
            Element::Fused3(a, b, c, d) => Wires::new(&[a, b, c, d]),
        }
    }

    pub fn is_link(&self) -> bool {
        matches!(self, Element::Link(..))
    }

    /// Number of constituent compare-exchange slots (links) in the element.
    pub fn slot_count(&self) -> usize {
        match self {
            Element::Link(..) => 1,
            Element::Fused2(..) => 2,
            Element::Fused3(..) => 3,
        }
    }

    /// The constituent links in slot order: `(a,b)`, `(b,c)`, `(c,d)`.
    pub fn slots(&self) -> Vec<(Wire, Wire)> {
        let w = self.wires();
        w.as_slice().windows(2).map(|p| (p[0], p[1])).collect()
    }

    pub fn touches(&self, wire: Wire) -> bool {
        self.wires().as_slice().contains(&wire)
    }

    pub fn shares_wire(&self, other: &Element) -> bool {
        self.wires().as_slice().iter().any(|&w| other.touches(w))
    }

    pub fn min_wire(&self) -> Wire {
        *self.wires().as_slice().iter().min().unwrap()
    }

    pub fn max_wire(&self) -> Wire {
        *self.wires().as_slice().iter().max().unwrap()
    }

    /// Reflects the element about the centre of an `order`-wire network
    /// (`w -> order + 1 - w`), keeping endpoints increasing.
    pub fn mirror(&self, order: usize) -> Element {
        let mut w: Vec<Wire> = self
            .wires()
            .as_slice()
            .iter()
            .map(|&x| order + 1 - x)
            .collect();
        w.reverse();
        Element::from_wires(&w).expect("mirror preserves arity")
    }

    /// Returns the element with endpoints sorted ascending.
    pub fn normalized(&self) -> Element {
        let mut w = self.wires().as_slice().to_vec();
        w.sort_unstable();
        Element::from_wires(&w).expect("normalizing preserves arity")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.wires();
        write!(f, "(")?;
        for (k, x) in w.as_slice().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Inline endpoint list of an element (at most four wires).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wires {
    buf: [Wire; 4],
    len: usize,
}

impl Wires {
    fn new(w: &[Wire]) -> Wires {
        let mut buf = [0; 4];
        buf[..w.len()].copy_from_slice(w);
        Wires { buf, len: w.len() }
    }

    pub fn as_slice(&self) -> &[Wire] {
        &self.buf[..self.len]
    }
}

/// A single invariant violation found by [`Network::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub element: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// Endpoint `wire` is 0 or exceeds the network order.
    OutOfRange { wire: Wire, order: usize },
    /// The same wire appears twice in one element.
    DuplicateEndpoint { wire: Wire },
    /// Endpoints are distinct but not listed in increasing order.
    NotIncreasing,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::OutOfRange { wire, order } => write!(
                f,
                "element {}: endpoint {wire} outside 1..={order}",
                self.element
            ),
            ViolationKind::DuplicateEndpoint { wire } => {
                write!(f, "element {}: duplicate endpoint {wire}", self.element)
            }
            ViolationKind::NotIncreasing => {
                write!(f, "element {}: endpoints not increasing", self.element)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid network: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidNetwork(pub Vec<Violation>);

/// An ordered sequence of elements over `order` wires.
///
/// Equality compares order and the element sequence; the name is a label only.
#[derive(Debug, Clone)]
pub struct Network {
    order: usize,
    elements: Vec<Element>,
    name: Option<String>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

impl Eq for Network {}

impl Network {
    /// Builds a network without checking it; see [`Network::validate`].
    pub fn new(order: usize, elements: Vec<Element>) -> Network {
        Network {
            order,
            elements,
            name: None,
        }
    }

    /// Builds a network and rejects it if any invariant is violated.
    pub fn checked(order: usize, elements: Vec<Element>) -> Result<Network, InvalidNetwork> {
        let net = Network::new(order, elements);
        net.validate().map_err(InvalidNetwork)?;
        Ok(net)
    }

    /// Convenience constructor for all-link networks.
    pub fn from_links(order: usize, links: &[(Wire, Wire)]) -> Network {
        Network::new(
            order,
            links.iter().map(|&(a, b)| Element::Link(a, b)).collect(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Network {
        self.name = Some(name.into());
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Total number of constituent links (a 2-op counts two, a 3-op three).
    pub fn link_count(&self) -> usize {
        self.elements.iter().map(Element::slot_count).sum()
    }

    pub fn is_all_links(&self) -> bool {
        self.elements.iter().all(Element::is_link)
    }

    /// Returns every invariant violation, tagged with its element index.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for (idx, e) in self.elements.iter().enumerate() {
            let w = e.wires();
            let w = w.as_slice();
            for &x in w {
                if x == 0 || x > self.order {
                    out.push(Violation {
                        element: idx,
                        kind: ViolationKind::OutOfRange {
                            wire: x,
                            order: self.order,
                        },
                    });
                }
            }
            let mut seen = Vec::with_capacity(4);
            let mut dup = false;
            for &x in w {
                if seen.contains(&x) {
                    out.push(Violation {
                        element: idx,
                        kind: ViolationKind::DuplicateEndpoint { wire: x },
                    });
                    dup = true;
                }
                seen.push(x);
            }
            if !dup && w.windows(2).any(|p| p[0] >= p[1]) {
                out.push(Violation {
                    element: idx,
                    kind: ViolationKind::NotIncreasing,
                });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Replaces every fused element by its constituent links:
    /// `Fused2(a,b,c)` becomes `(a,b),(b,c)` and `Fused3(a,b,c,d)` becomes
    /// `(b,c),(a,b),(c,d)`.
    ///
    /// This preserves the network function only where the fused element's
    /// non-interference premise holds.
    pub fn decompose(&self) -> Network {
        let mut elements = Vec::with_capacity(self.link_count());
        for e in &self.elements {
            match *e {
                Element::Link(..) => elements.push(*e),
                Element::Fused2(a, b, c) => {
                    elements.push(Element::Link(a, b));
                    elements.push(Element::Link(b, c));
                }
                Element::Fused3(a, b, c, d) => {
                    elements.push(Element::Link(b, c));
                    elements.push(Element::Link(a, b));
                    elements.push(Element::Link(c, d));
                }
            }
        }
        Network {
            order: self.order,
            elements,
            name: self.name.clone(),
        }
    }

    /// Appends elements, returning a new network.
    pub fn extended(&self, more: impl IntoIterator<Item = Element>) -> Network {
        let mut elements = self.elements.clone();
        elements.extend(more);
        Network {
            order: self.order,
            elements,
            name: self.name.clone(),
        }
    }

    /// Returns a network with the given element sequence and the same order and name.
    pub fn with_elements(&self, elements: Vec<Element>) -> Network {
        Network {
            order: self.order,
            elements,
            name: self.name.clone(),
        }
    }
}
