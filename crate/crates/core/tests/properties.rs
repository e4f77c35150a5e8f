mod common;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use common::{c, ladder_oracle, lam};
use laddernet::dirichlet::{laplacian_residual, source_current};
use laddernet::exhaustion::{diagnose, exhaust, ConvergenceStatus, Source};
use laddernet::format::{format_complex, parse_complex};
use laddernet::infinite::{cl_infinite_admittance, lc_infinite_admittance};
use laddernet::ladder::{characteristic_roots, ladder_voltages, root_form};
use laddernet::network::{in_lambda_set, Edge, EdgeAdmittance};
use laddernet::{
    build_ladder, effective_admittance, finite_ladder_admittance, solve_dirichlet, Admittance,
    EdgeParams, LadderSpec, Lambda, LimitValue, Network,
};

fn complex(lo: f64, hi: f64) -> impl Strategy<Value = Complex64> {
    (lo..hi, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn lambda_strategy() -> impl Strategy<Value = Lambda> {
    (-3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("nonzero", |(x, y)| x.hypot(*y) > 1e-3)
        .prop_map(|(x, y)| lam(x, y))
}

/// `(R, L, D)` with at least one positive component.
fn params() -> impl Strategy<Value = EdgeParams> + Clone {
    let part = prop_oneof![Just(0.0), 0.1..5.0f64];
    (part.clone(), part.clone(), part)
        .prop_filter("some component", |(r, l, d)| r + l + d > 0.0)
        .prop_map(|(r, l, d)| EdgeParams::new(r, l, d).unwrap())
}

/// Random connected network: a spanning path `0, 1, …, n−1`
/// plus extra chords, source 0 and boundary the last vertex plus extras.
fn random_network(
    edge: impl Strategy<Value = EdgeAdmittance> + Clone,
) -> impl Strategy<Value = Network> {
    (3usize..9)
        .prop_flat_map(move |n| {
            let path = proptest::collection::vec(edge.clone(), n - 1);
            let chords = proptest::collection::vec((0..n, 0..n, edge.clone()), 0..n);
            let extra_boundary = proptest::collection::vec(1..n, 0..2);
            (Just(n), path, chords, extra_boundary)
        })
        .prop_map(|(n, path, chords, extra)| {
            let mut edges: Vec<Edge> = path
                .into_iter()
                .enumerate()
                .map(|(i, admittance)| Edge {
                    u: i,
                    v: i + 1,
                    admittance,
                })
                .collect();
            edges.extend(
                chords
                    .into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, admittance)| Edge { u, v, admittance }),
            );
            let mut boundary = vec![n - 1];
            boundary.extend(extra);
            Network::new(0..n, edges, 0, boundary).unwrap()
        })
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// Two-terminal series-parallel network with its admittance.
#[derive(Debug, Clone)]
enum Sp {
    Leaf(Complex64),
    Series(Box<Sp>, Box<Sp>),
    Parallel(Box<Sp>, Box<Sp>),
}

impl Sp {
    fn admittance(&self) -> Complex64 {
        match self {
            Sp::Leaf(w) => *w,
            Sp::Series(a, b) => {
                let (a, b) = (a.admittance(), b.admittance());
                a * b / (a + b)
            }
            Sp::Parallel(a, b) => a.admittance() + b.admittance(),
        }
    }

    fn wire(&self, from: usize, to: usize, next: &mut usize, edges: &mut Vec<Edge>) {
        match self {
            Sp::Leaf(w) => edges.push(Edge {
                u: from,
                v: to,
                admittance: EdgeAdmittance::Fixed(*w),
            }),
            Sp::Series(a, b) => {
                let mid = *next;
                *next += 1;
                a.wire(from, mid, next, edges);
                b.wire(mid, to, next, edges);
            }
            Sp::Parallel(a, b) => {
                a.wire(from, to, next, edges);
                b.wire(from, to, next, edges);
            }
        }
    }
}

/// Leaves with positive real part keep every series sum away from zero.
fn sp_strategy() -> impl Strategy<Value = Sp> {
    let leaf = (0.2..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Sp::Leaf(c(re, im)));
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Sp::Series(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Sp::Parallel(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn admittance_inverts_impedance(p in params(), lambda in lambda_strategy()) {
        let z = p.impedance(lambda);
        if let Ok(rho) = p.admittance(lambda) {
            prop_assert!((rho * z - 1.0).norm() <= 1e-12);
        }
    }

    #[test]
    fn ladder_shape(n in 1usize..60, spec_kind in 0..3, a in complex(0.5, 2.0), b in complex(0.5, 2.0)) {
        let spec = match spec_kind {
            0 => LadderSpec::lc(1.0, 2.0).unwrap(),
            1 => LadderSpec::cl(0.5, 1.0).unwrap(),
            _ => LadderSpec::general(a, b),
        };
        let net = build_ladder(&spec, n).unwrap();
        prop_assert_eq!(net.vertices().len(), 2 * n);
        prop_assert_eq!(net.edges().len(), 2 * n - 1);
        prop_assert_eq!(net.boundary().len(), n);
    }

    #[test]
    fn lambda_set_matches_edge_checks(
        net in random_network(prop_oneof![
            Just(EdgeParams::new(0.0, 1.0, 1.0).unwrap()),
            Just(EdgeParams::new(0.0, 1.0, 4.0).unwrap()),
            Just(EdgeParams::resistor(1.0).unwrap()),
            Just(EdgeParams::inductor(2.0).unwrap()),
        ].prop_map(EdgeAdmittance::from)),
        which in 0..4usize,
    ) {
        let lambda = [lam(0.0, 1.0), lam(0.0, 2.0), lam(1.0, 0.0), lam(0.0, -1.0)][which];
        let direct = net.edges().iter().all(|e| e.admittance.at(lambda).is_ok());
        prop_assert_eq!(in_lambda_set(&net, lambda), direct);
        prop_assert_eq!(effective_admittance(&net, lambda).is_ok(), direct);
    }

    #[test]
    fn dirichlet_residual_small(
        net in random_network(params().prop_map(EdgeAdmittance::from)),
        lambda in lambda_strategy(),
    ) {
        if let Ok(v) = solve_dirichlet(&net, lambda) {
            let (residual, scale) = laplacian_residual(&net, &v).unwrap();
            prop_assert!(residual <= 1e-9 * scale.max(1.0), "{} vs {}", residual, scale);
            prop_assert_eq!(v.get(net.source()), Some(c(1.0, 0.0)));
            for b in net.boundary() {
                prop_assert_eq!(v.get(*b), Some(c(0.0, 0.0)));
            }
        }
    }

    #[test]
    fn resistive_maximum_principle(
        net in random_network((0.1..10.0f64).prop_map(|r| EdgeAdmittance::from(EdgeParams::resistor(r).unwrap()))),
    ) {
        let v = solve_dirichlet(&net, lam(1.0, 0.0)).unwrap();
        for value in v.values().values() {
            prop_assert!(value.im.abs() <= 1e-12);
            prop_assert!(value.re >= -1e-12 && value.re <= 1.0 + 1e-12);
        }
        let p = effective_admittance(&net, lam(1.0, 0.0)).unwrap().finite().unwrap();
        prop_assert!(p.re > 0.0);
    }

    #[test]
    fn series_parallel_reduction(sp in sp_strategy()) {
        let mut edges = Vec::new();
        let mut next = 2;
        sp.wire(0, 1, &mut next, &mut edges);
        let net = Network::new(0..next, edges, 0, [1]).unwrap();
        let p = effective_admittance(&net, lam(1.0, 0.0)).unwrap().finite().unwrap();
        prop_assert!(rel(p, sp.admittance()) <= 1e-10, "{} vs {}", p, sp.admittance());
    }

    /// Interior pair `x, y` whose 2×2 system is singular but consistent:
    /// diagonal `t·w`, `w/t`, off-diagonal `−w`, source weights `a = −t·d`, `d`.
    #[test]
    fn admittance_independent_of_solution_choice(
        w in complex(0.5, 2.0), t in complex(0.5, 2.0), d in complex(0.5, 2.0), shift in complex(0.1, 3.0),
    ) {
        let a = -t * d;
        let cx = t * w - w - a;
        let ey = w / t - w - d;
        prop_assume!(cx.norm() > 1e-3 && ey.norm() > 1e-3);
        let fixed = |u, v, z| Edge { u, v, admittance: EdgeAdmittance::Fixed(z) };
        // 0 = source, 1 = x, 2 = y, 3 = boundary.
        let net = Network::new(0..4, vec![
            fixed(1, 2, w), fixed(0, 1, a), fixed(1, 3, cx), fixed(0, 2, d), fixed(2, 3, ey),
        ], 0, [3]).unwrap();
        let lambda = lam(1.0, 0.0);
        let v = solve_dirichlet(&net, lambda).unwrap();
        prop_assert!(!v.is_unique());
        let p = source_current(&net, &v).unwrap();

        let moved: BTreeMap<usize, Complex64> = [
            (1, v.get(1).unwrap() + shift),
            (2, v.get(2).unwrap() + shift * t),
        ].into_iter().collect();
        let other = v.with_interior(&net, &moved);
        let (residual, scale) = laplacian_residual(&net, &other).unwrap();
        prop_assert!(residual <= 1e-9 * scale);
        let q = source_current(&net, &other).unwrap();
        prop_assert!((p - q).norm() <= 1e-9 * p.norm().max(1.0), "{} vs {}", p, q);
    }

    #[test]
    fn closed_form_matches_oracles(a in complex(0.5, 2.0), b in complex(0.5, 2.0), n in 1usize..16) {
        let mu = b / a;
        prop_assume!((mu + 4.0).norm() > 0.1);
        let psi = characteristic_roots(mu).unwrap().psi1;
        prop_assume!((psi.powu(2 * n as u32) - 1.0).norm() > 1e-3);
        let p = finite_ladder_admittance(a, b, n).unwrap();
        prop_assert!(rel(p, ladder_oracle(a, b, n)) <= 1e-9);
        let solved = effective_admittance(&build_ladder(&LadderSpec::general(a, b), n).unwrap(), lam(1.0, 0.0))
            .unwrap().finite().unwrap();
        prop_assert!(rel(p, solved) <= 1e-9);
    }

    #[test]
    fn root_symmetry(a in complex(0.5, 2.0), b in complex(0.5, 2.0), n in 1usize..16) {
        let roots = characteristic_roots(b / a).unwrap();
        prop_assume!(!roots.degenerate);
        prop_assume!((roots.psi1.powu(2 * n as u32) - 1.0).norm() > 1e-3);
        let (p1, p2) = (a * root_form(roots.psi1, n), a * root_form(roots.psi2, n));
        prop_assert!(rel(p1, p2) <= 1e-10, "{} vs {}", p1, p2);
    }

    #[test]
    fn degenerate_limit_continuity(a in complex(0.5, 2.0), n in 1usize..=10) {
        let b = a * c(-4.0 + 1e-6, 0.0);
        let p = finite_ladder_admittance(a, b, n).unwrap();
        let limit = a * (2.0 * n as f64 - 1.0) / n as f64;
        prop_assert!((p - limit).norm() <= 1e-4 * a.norm());
    }

    #[test]
    fn recurrence_residual_small(a in complex(0.5, 2.0), b in complex(0.5, 2.0), n in 2usize..30) {
        let mu = b / a;
        prop_assume!((mu + 4.0).norm() > 0.1);
        let psi = characteristic_roots(mu).unwrap().psi1;
        prop_assume!((psi.powu(2 * n as u32) - 1.0).norm() > 1e-3);
        let v = ladder_voltages(a, b, n).unwrap();
        prop_assert!(v.recurrence_residual() <= 1e-9);
    }

    #[test]
    fn admittance_scales_with_alpha_beta(
        a in complex(0.5, 2.0), b in complex(0.5, 2.0), k in complex(0.1, 10.0), n in 1usize..16,
    ) {
        let mu = b / a;
        prop_assume!((mu + 4.0).norm() > 0.1);
        let psi = characteristic_roots(mu).unwrap().psi1;
        prop_assume!((psi.powu(2 * n as u32) - 1.0).norm() > 1e-3);
        let p = finite_ladder_admittance(a, b, n).unwrap();
        let scaled = finite_ladder_admittance(k * a, k * b, n).unwrap();
        prop_assert!(rel(scaled, k * p) <= 1e-12);
    }

    #[test]
    fn conjugate_symmetry(lambda in lambda_strategy(), l in 0.2..5.0f64, cap in 0.2..5.0f64) {
        let conj = Lambda::new(lambda.value().conj()).unwrap();
        for (p, q) in [
            (lc_infinite_admittance(lambda, l, cap).unwrap().value, lc_infinite_admittance(conj, l, cap).unwrap().value),
            (cl_infinite_admittance(lambda, l, cap).unwrap().value, cl_infinite_admittance(conj, l, cap).unwrap().value),
        ] {
            match (p, q) {
                (LimitValue::Finite(p), LimitValue::Finite(q)) => prop_assert!(rel(p.conj(), q) <= 1e-12),
                (LimitValue::NonConvergent, LimitValue::NonConvergent) => {}
                _ => prop_assert!(false, "convergence differs under conjugation"),
            }
        }
    }

    #[test]
    fn exhaustion_sources_agree(lambda in lambda_strategy(), kind in 0..2) {
        let spec = if kind == 0 { LadderSpec::lc(1.0, 1.0).unwrap() } else { LadderSpec::cl(1.0, 1.0).unwrap() };
        let converges = match kind {
            0 => lc_infinite_admittance(lambda, 1.0, 1.0).unwrap().value.finite().is_some(),
            _ => cl_infinite_admittance(lambda, 1.0, 1.0).unwrap().value.finite().is_some(),
        };
        prop_assume!(converges);
        let a = exhaust(&spec, lambda, 15, Source::ClosedForm).unwrap();
        let b = exhaust(&spec, lambda, 15, Source::DirichletSolve).unwrap();
        for ((_, p), (_, q)) in a.terms.iter().zip(&b.terms) {
            match (p, q) {
                (Admittance::Finite(p), Admittance::Finite(q)) => prop_assert!(rel(*p, *q) <= 1e-9),
                _ => prop_assert!(false, "solvability differs"),
            }
        }
    }

    #[test]
    fn diagnosed_limit_matches(lambda in lambda_strategy()) {
        let r = lc_infinite_admittance(lambda, 1.0, 1.0).unwrap();
        prop_assume!(r.psi1.norm() < 0.7);
        let (tol, n_max) = (1e-9, 60);
        let seq = exhaust(&LadderSpec::lc(1.0, 1.0).unwrap(), lambda, n_max, Source::ClosedForm).unwrap();
        let v = diagnose(&seq, tol).unwrap();
        prop_assert_eq!(v.status, ConvergenceStatus::Converged);
        let bound = tol.max(10.0 * r.psi1.norm().powi(2 * n_max as i32));
        prop_assert!((v.estimated_limit.unwrap() - r.value.finite().unwrap()).norm() <= bound);
    }

    #[test]
    fn segment_never_converges(y in 0.1..1.9f64, sign in prop::bool::ANY, n_max in 20usize..60) {
        let y = if sign { y } else { -y };
        let seq = exhaust(&LadderSpec::lc(1.0, 1.0).unwrap(), lam(0.0, y), n_max, Source::ClosedForm).unwrap();
        let v = diagnose(&seq, 1e-3).unwrap();
        prop_assert_ne!(v.status, ConvergenceStatus::Converged);
    }

    #[test]
    fn complex_text_round_trip(re in -1e6..1e6f64, im in -1e6..1e6f64) {
        let z = c(re, im);
        let back = parse_complex(&format_complex(z)).unwrap();
        prop_assert!((back - z).norm() <= 1e-8 * z.norm().max(1e-300));
    }
}
