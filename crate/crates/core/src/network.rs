//! Complex-weighted networks and the per-edge admittance functions of λ.
//!
//! An edge carries a resistance `R`, an inductance `L` and an inverse
//! capacitance `D = 1/C`. Its impedance is `z(λ) = R + Lλ + D/λ` and its
//! admittance is `ρ(λ) = λ / (Lλ² + Rλ + D)`. Networks store the edge
//! descriptors, not the admittance values, so one network can be evaluated
//! over a whole grid of λ.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which the admittance denominator counts as zero.
pub const ZERO_IMPEDANCE_TOL: f64 = 1e-14;

/// The complex frequency parameter λ. Never zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda(Complex64);

impl Lambda {
    pub fn new(value: Complex64) -> Result<Self> {
        if value == Complex64::new(0.0, 0.0) || !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::ZeroLambda);
        }
        Ok(Self(value))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Resistance, inductance and inverse capacitance of a single edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeParams {
    r: f64,
    l: f64,
    d: f64,
}

impl EdgeParams {
    pub fn new(r: f64, l: f64, d: f64) -> Result<Self> {
        for (name, x) in [("R", r), ("L", l), ("D", d)] {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::InvalidEdgeParams(format!(
                    "{name} must be finite and nonnegative, got {x}"
                )));
            }
        }
        if r + l + d <= 0.0 {
            return Err(Error::InvalidEdgeParams(
                "R + L + D must be positive".into(),
            ));
        }
        Ok(Self { r, l, d })
    }

    pub fn resistor(r: f64) -> Result<Self> {
        Self::new(r, 0.0, 0.0)
    }

    pub fn inductor(l: f64) -> Result<Self> {
        Self::new(0.0, l, 0.0)
    }

    /// A capacitor of capacitance `c`, stored as `D = 1/c`.
    pub fn capacitor(c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::InvalidEdgeParams(format!(
                "capacitance must be positive, got {c}"
            )));
        }
        Self::new(0.0, 0.0, 1.0 / c)
    }

    pub fn resistance(&self) -> f64 {
        self.r
    }

    pub fn inductance(&self) -> f64 {
        self.l
    }

    pub fn inverse_capacitance(&self) -> f64 {
        self.d
    }

    /// `z(λ) = R + Lλ + D/λ`.
    pub fn impedance(&self, lambda: Lambda) -> Complex64 {
        let z = lambda.value();
        self.r + self.l * z + self.d / z
    }

    /// `ρ(λ) = λ / (Lλ² + Rλ + D)`.
    pub fn admittance(&self, lambda: Lambda) -> Result<Complex64> {
        edge_admittance(self, lambda)
    }
}

/// Admittance of an edge with parameters `p` at `lambda`.
///
/// Fails with [`Error::ZeroImpedance`] when `|Lλ² + Rλ + D|` falls below
/// `1e-14 · max(1, L|λ|², R|λ|, D)`.
pub fn edge_admittance(p: &EdgeParams, lambda: Lambda) -> Result<Complex64> {
    let z = lambda.value();
    let denom = p.l * z * z + p.r * z + p.d;
    let m = z.norm();
    let scale = 1.0f64.max(p.l * m * m).max(p.r * m).max(p.d);
    if denom.norm() <= ZERO_IMPEDANCE_TOL * scale {
        return Err(Error::ZeroImpedance);
    }
    Ok(z / denom)
}

/// How an edge obtains its admittance at a given λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeAdmittance {
    /// Physical R/L/D edge, evaluated through [`edge_admittance`].
    Params(EdgeParams),
    /// A fixed complex admittance, independent of λ.
    Fixed(Complex64),
}

impl EdgeAdmittance {
    pub fn at(&self, lambda: Lambda) -> Result<Complex64> {
        match self {
            EdgeAdmittance::Params(p) => edge_admittance(p, lambda),
            EdgeAdmittance::Fixed(rho) => Ok(*rho),
        }
    }
}

impl From<EdgeParams> for EdgeAdmittance {
    fn from(p: EdgeParams) -> Self {
        EdgeAdmittance::Params(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub admittance: EdgeAdmittance,
}

/// A finite network `(V, ρ, a₀, B)`.
///
/// Vertices carry integer labels that need not be contiguous; the ladder
/// builder uses the labels `{0, …, 2n−2} ∪ {2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
    source: usize,
    boundary: BTreeSet<usize>,
}

impl Network {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        edges: Vec<Edge>,
        source: usize,
        boundary: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut labels: Vec<usize> = vertices.into_iter().collect();
        let count = labels.len();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != count {
            return Err(Error::InvalidNetwork("duplicate vertex label".into()));
        }
        if labels.len() < 2 {
            return Err(Error::InvalidNetwork(
                "a network needs at least two vertices".into(),
            ));
        }
        let known: BTreeSet<usize> = labels.iter().copied().collect();
        for e in &edges {
            if e.u == e.v {
                return Err(Error::InvalidNetwork(format!(
                    "self-loop at vertex {}",
                    e.u
                )));
            }
            if !known.contains(&e.u) || !known.contains(&e.v) {
                return Err(Error::InvalidNetwork(format!(
                    "edge ({},{}) references an unknown vertex",
                    e.u, e.v
                )));
            }
        }
        if !known.contains(&source) {
            return Err(Error::InvalidNetwork(format!(
                "source {source} is not a vertex"
            )));
        }
        let boundary: BTreeSet<usize> = boundary.into_iter().collect();
        if boundary.is_empty() {
            return Err(Error::InvalidNetwork("boundary set is empty".into()));
        }
        if boundary.contains(&source) {
            return Err(Error::InvalidNetwork(
                "source vertex lies in the boundary".into(),
            ));
        }
        if let Some(b) = boundary.iter().find(|b| !known.contains(b)) {
            return Err(Error::InvalidNetwork(format!(
                "boundary vertex {b} is not a vertex"
            )));
        }

        let net = Self {
            vertices: labels,
            edges,
            source,
            boundary,
        };
        if !net.is_connected() {
            return Err(Error::InvalidNetwork("graph is not connected".into()));
        }
        Ok(net)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn boundary(&self) -> &BTreeSet<usize> {
        &self.boundary
    }

    /// Vertices outside `B ∪ {a₀}`, in ascending label order.
    pub fn interior(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .copied()
            .filter(|x| *x != self.source && !self.boundary.contains(x))
            .collect()
    }

    fn is_connected(&self) -> bool {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.u).or_default().push(e.v);
            adj.entry(e.v).or_default().push(e.u);
        }
        let mut seen = BTreeSet::from([self.vertices[0]]);
        let mut queue = VecDeque::from([self.vertices[0]]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Evaluates every edge admittance at `lambda`, in edge order.
    pub fn admittances(&self, lambda: Lambda) -> Result<Vec<Complex64>> {
        self.edges
            .iter()
            .map(|e| {
                e.admittance.at(lambda).map_err(|err| match err {
                    Error::ZeroImpedance => Error::NotInLambdaSet { u: e.u, v: e.v },
                    other => other,
                })
            })
            .collect()
    }

    /// Parses the JSON network format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: NetworkFile =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        file.into_network()
    }

    /// Serializes to the JSON network format.
    ///
    /// The format numbers vertices `0..count`, so non-contiguous labels are
    /// compacted in ascending order. Fixed-admittance edges cannot be written.
    pub fn to_json(&self) -> Result<String> {
        let relabel: BTreeMap<usize, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| match e.admittance {
                EdgeAdmittance::Params(p) => Ok(EdgeRecord {
                    u: relabel[&e.u],
                    v: relabel[&e.v],
                    r: p.r,
                    l: p.l,
                    d: p.d,
                }),
                EdgeAdmittance::Fixed(_) => Err(Error::Unsupported(format!(
                    "edge ({},{}) has a fixed admittance with no R/L/D form",
                    e.u, e.v
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let file = NetworkFile {
            vertices: self.vertices.len(),
            edges,
            a0: relabel[&self.source],
            boundary: self.boundary.iter().map(|b| relabel[b]).collect(),
        };
        serde_json::to_string_pretty(&file).map_err(|e| Error::Schema(e.to_string()))
    }
}

/// True iff every edge impedance is nonzero at `lambda`.
pub fn in_lambda_set(net: &Network, lambda: Lambda) -> bool {
    net.edges().iter().all(|e| e.admittance.at(lambda).is_ok())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: usize,
    v: usize,
    #[serde(rename = "R")]
    r: f64,
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "D")]
    d: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    vertices: usize,
    edges: Vec<EdgeRecord>,
    a0: usize,
    boundary: Vec<usize>,
}

impl NetworkFile {
    fn into_network(self) -> Result<Network> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let p = EdgeParams::new(e.r, e.l, e.d)
                    .map_err(|err| Error::Schema(format!("edge ({},{}): {err}", e.u, e.v)))?;
                Ok(Edge {
                    u: e.u,
                    v: e.v,
                    admittance: p.into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Network::new(0..self.vertices, edges, self.a0, self.boundary)
            .map_err(|err| Error::Schema(err.to_string()))
    }
}

/// Which physical ladder, or an abstract αβ one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LadderSpec {
    /// Series inductors (`α = 1/(Lλ)`), capacitor rungs (`β = Cλ`).
    Lc { inductance: f64, capacitance: f64 },
    /// Series capacitors (`α = Cλ`), inductor rungs (`β = 1/(Lλ)`).
    Cl { inductance: f64, capacitance: f64 },
    /// Arbitrary series admittance `α` and rung admittance `β`.
    General {
        series: EdgeAdmittance,
        rung: EdgeAdmittance,
    },
}

impl LadderSpec {
    pub fn lc(inductance: f64, capacitance: f64) -> Result<Self> {
        check_lc(inductance, capacitance)?;
        Ok(LadderSpec::Lc {
            inductance,
            capacitance,
        })
    }

    pub fn cl(inductance: f64, capacitance: f64) -> Result<Self> {
        check_lc(inductance, capacitance)?;
        Ok(LadderSpec::Cl {
            inductance,
            capacitance,
        })
    }

    /// Ladder with fixed complex α and β.
    pub fn general(alpha: Complex64, beta: Complex64) -> Self {
        LadderSpec::General {
            series: EdgeAdmittance::Fixed(alpha),
            rung: EdgeAdmittance::Fixed(beta),
        }
    }

    pub fn series_edge(&self) -> EdgeAdmittance {
        match *self {
            LadderSpec::Lc { inductance, .. } => EdgeAdmittance::Params(EdgeParams {
                r: 0.0,
                l: inductance,
                d: 0.0,
            }),
            LadderSpec::Cl { capacitance, .. } => EdgeAdmittance::Params(EdgeParams {
                r: 0.0,
                l: 0.0,
                d: 1.0 / capacitance,
            }),
            LadderSpec::General { series, .. } => series,
        }
    }

    pub fn rung_edge(&self) -> EdgeAdmittance {
        match *self {
            LadderSpec::Lc { capacitance, .. } => EdgeAdmittance::Params(EdgeParams {
                r: 0.0,
                l: 0.0,
                d: 1.0 / capacitance,
            }),
            LadderSpec::Cl { inductance, .. } => EdgeAdmittance::Params(EdgeParams {
                r: 0.0,
                l: inductance,
                d: 0.0,
            }),
            LadderSpec::General { rung, .. } => rung,
        }
    }

    /// Series admittance α at `lambda`.
    pub fn alpha(&self, lambda: Lambda) -> Result<Complex64> {
        self.series_edge().at(lambda)
    }

    /// Rung admittance β at `lambda`.
    pub fn beta(&self, lambda: Lambda) -> Result<Complex64> {
        self.rung_edge().at(lambda)
    }
}

fn check_lc(l: f64, c: f64) -> Result<()> {
    if !(l > 0.0 && l.is_finite() && c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "L and C must be positive and finite, got L={l}, C={c}"
        )));
    }
    Ok(())
}

/// The finite ladder `Γₙ`: series edges `(2k−2)∼2k` for `k = 1..n`, rungs
/// `(2k−1)∼2k` for `k = 1..n−1`, source `0`, ground `{1, 3, …, 2n−3} ∪ {2n}`.
pub fn build_ladder(spec: &LadderSpec, n: usize) -> Result<Network> {
    if n < 1 {
        return Err(Error::InvalidSize { min: 1, got: n });
    }
    let series = spec.series_edge();
    let rung = spec.rung_edge();
    let vertices = (0..=2 * n - 2).chain(std::iter::once(2 * n));
    let mut edges = Vec::with_capacity(2 * n - 1);
    for k in 1..=n {
        edges.push(Edge {
            u: 2 * k - 2,
            v: 2 * k,
            admittance: series,
        });
    }
    for k in 1..n {
        edges.push(Edge {
            u: 2 * k - 1,
            v: 2 * k,
            admittance: rung,
        });
    }
    let boundary = (1..n).map(|k| 2 * k - 1).chain(std::iter::once(2 * n));
    Network::new(vertices, edges, 0, boundary)
}
