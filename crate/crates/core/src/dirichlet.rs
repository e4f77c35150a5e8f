//! Discrete Dirichlet problem and effective admittance on finite networks.
//!
//! With `v(a₀) = 1` and `v = 0` on `B`, the harmonic condition
//! `Σ_y (v(y) − v(x)) ρ_xy = 0` at every interior vertex is a square linear
//! system in the interior voltages. The effective admittance is the current
//! leaving `a₀`: `P = Σ_x (1 − v(x)) ρ_{x a₀}`. When the system has no
//! solution, `P = ∞`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::network::{Lambda, Network};

/// The interior linear system `A u = b`; row and column `i` belong to
/// vertex `interior[i]`.
#[derive(Debug, Clone)]
pub struct InteriorSystem {
    pub interior: Vec<usize>,
    pub matrix: Matrix,
    pub rhs: Vec<Complex64>,
}

pub fn assemble_system(net: &Network, lambda: Lambda) -> Result<InteriorSystem> {
    let rho = net.admittances(lambda)?;
    let interior = net.interior();
    let index: BTreeMap<usize, usize> = interior.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut matrix = Matrix::zeros(interior.len());
    let mut rhs = vec![Complex64::new(0.0, 0.0); interior.len()];
    let source = net.source();

    for (edge, &w) in net.edges().iter().zip(&rho) {
        for (x, y) in [(edge.u, edge.v), (edge.v, edge.u)] {
            let Some(&i) = index.get(&x) else { continue };
            matrix.add(i, i, w);
            if let Some(&j) = index.get(&y) {
                matrix.add(i, j, -w);
            } else if y == source {
                rhs[i] += w;
            }
        }
    }
    Ok(InteriorSystem {
        interior,
        matrix,
        rhs,
    })
}

/// Voltages solving the Dirichlet problem at one λ.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageSolution {
    values: BTreeMap<usize, Complex64>,
    lambda: Lambda,
    unique: bool,
}

impl VoltageSolution {
    pub fn values(&self) -> &BTreeMap<usize, Complex64> {
        &self.values
    }

    pub fn get(&self, vertex: usize) -> Option<Complex64> {
        self.values.get(&vertex).copied()
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    /// False when the interior system was singular and one of many solutions
    /// was returned.
    pub fn is_unique(&self) -> bool {
        self.unique
    }

    /// Replaces interior voltages; boundary and source values stay pinned.
    pub fn with_interior(&self, net: &Network, values: &BTreeMap<usize, Complex64>) -> Self {
        let mut out = self.clone();
        for x in net.interior() {
            if let Some(v) = values.get(&x) {
                out.values.insert(x, *v);
            }
        }
        out
    }
}

pub fn solve_dirichlet(net: &Network, lambda: Lambda) -> Result<VoltageSolution> {
    let system = assemble_system(net, lambda)?;
    let solution = linalg::solve(&system.matrix, &system.rhs).map_err(|_| Error::NoSolution)?;

    let mut values = BTreeMap::new();
    values.insert(net.source(), Complex64::new(1.0, 0.0));
    for &b in net.boundary() {
        values.insert(b, Complex64::new(0.0, 0.0));
    }
    for (x, v) in system.interior.iter().zip(&solution.x) {
        values.insert(*x, *v);
    }
    Ok(VoltageSolution {
        values,
        lambda,
        unique: solution.is_unique(),
    })
}

/// Effective admittance, `∞` when the Dirichlet problem is unsolvable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Admittance {
    Finite(Complex64),
    Infinite,
}

impl Admittance {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Admittance::Finite(_))
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            Admittance::Finite(p) => Some(*p),
            Admittance::Infinite => None,
        }
    }

    /// `Z = 1/P`, with `Z = 0` for `P = ∞`; `None` stands for `Z = ∞`.
    pub fn impedance(&self) -> Option<Complex64> {
        match self {
            Admittance::Infinite => Some(Complex64::new(0.0, 0.0)),
            Admittance::Finite(p) if p.norm() == 0.0 => None,
            Admittance::Finite(p) => Some(p.inv()),
        }
    }
}

/// `Σ_x (1 − v(x)) ρ_{x a₀}` over the neighbours of `a₀`.
pub fn source_current(net: &Network, voltages: &VoltageSolution) -> Result<Complex64> {
    let rho = net.admittances(voltages.lambda())?;
    let source = net.source();
    let one = Complex64::new(1.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for (edge, &w) in net.edges().iter().zip(&rho) {
        let other = if edge.u == source {
            edge.v
        } else if edge.v == source {
            edge.u
        } else {
            continue;
        };
        let v = voltages.get(other).expect("every vertex carries a voltage");
        total += (one - v) * w;
    }
    Ok(total)
}

pub fn effective_admittance(net: &Network, lambda: Lambda) -> Result<Admittance> {
    match solve_dirichlet(net, lambda) {
        Ok(v) => Ok(Admittance::Finite(source_current(net, &v)?)),
        Err(Error::NoSolution) => Ok(Admittance::Infinite),
        Err(e) => Err(e),
    }
}

/// Largest `|Δ_ρ v(x)|` over interior vertices, together with the largest
/// absolute row sum `Σ_y |ρ_xy|` used to scale it.
pub fn laplacian_residual(net: &Network, voltages: &VoltageSolution) -> Result<(f64, f64)> {
    let rho = net.admittances(voltages.lambda())?;
    let mut lap: BTreeMap<usize, Complex64> = BTreeMap::new();
    let mut row_norm: BTreeMap<usize, f64> = BTreeMap::new();
    for (edge, &w) in net.edges().iter().zip(&rho) {
        let vu = voltages.get(edge.u).unwrap();
        let vv = voltages.get(edge.v).unwrap();
        *lap.entry(edge.u).or_default() += (vv - vu) * w;
        *lap.entry(edge.v).or_default() += (vu - vv) * w;
        *row_norm.entry(edge.u).or_default() += w.norm();
        *row_norm.entry(edge.v).or_default() += w.norm();
    }
    let interior = net.interior();
    let residual = interior
        .iter()
        .map(|x| lap.get(x).map_or(0.0, |z| z.norm()))
        .fold(0.0, f64::max);
    let scale = interior
        .iter()
        .map(|x| row_norm.get(x).copied().unwrap_or(0.0))
        .fold(0.0, f64::max);
    Ok((residual, scale))
}
