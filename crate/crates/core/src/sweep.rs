//! Region and admittance maps over a rectangle of the λ-plane.

use std::io::Write;
use std::thread;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::format_real;
use crate::infinite::{cl_infinite_admittance, lc_infinite_admittance};
use crate::network::{LadderSpec, Lambda};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
    n_re: usize,
    n_im: usize,
}

impl SweepGrid {
    pub fn new(re: (f64, f64), im: (f64, f64), n_re: usize, n_im: usize) -> Result<Self> {
        let finite = [re.0, re.1, im.0, im.1].iter().all(|x| x.is_finite());
        if !finite || re.0 >= re.1 || im.0 >= im.1 {
            return Err(Error::InvalidGrid(format!(
                "need finite bounds with min < max, got re [{}, {}], im [{}, {}]",
                re.0, re.1, im.0, im.1
            )));
        }
        if n_re < 2 || n_im < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points per axis, got {n_re}x{n_im}"
            )));
        }
        Ok(Self {
            re_min: re.0,
            re_max: re.1,
            im_min: im.0,
            im_max: im.1,
            n_re,
            n_im,
        })
    }

    pub fn len(&self) -> usize {
        self.n_re * self.n_im
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn axis(min: f64, max: f64, n: usize, k: usize) -> f64 {
        if k + 1 == n {
            max
        } else {
            min + (max - min) * k as f64 / (n - 1) as f64
        }
    }

    /// Grid point number `index` in row-major order: rows run over `Im λ`
    /// ascending, columns over `Re λ` ascending.
    pub fn point(&self, index: usize) -> Complex64 {
        let (row, col) = (index / self.n_re, index % self.n_re);
        Complex64::new(
            Self::axis(self.re_min, self.re_max, self.n_re, col),
            Self::axis(self.im_min, self.im_max, self.n_im, row),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda: Complex64,
    pub region: &'static str,
    /// Infinite admittance, `None` where the finite ladders do not converge.
    pub admittance: Option<Complex64>,
}

impl SweepRow {
    pub fn converges(&self) -> bool {
        self.admittance.is_some()
    }
}

fn evaluate(spec: &LadderSpec, z: Complex64) -> Result<SweepRow> {
    let Ok(lambda) = Lambda::new(z) else {
        return Ok(SweepRow {
            lambda: z,
            region: "zero",
            admittance: None,
        });
    };
    let (region, value) = match *spec {
        LadderSpec::Lc {
            inductance,
            capacitance,
        } => {
            let r = lc_infinite_admittance(lambda, inductance, capacitance)?;
            (r.region.tag(), r.value)
        }
        LadderSpec::Cl {
            inductance,
            capacitance,
        } => {
            let r = cl_infinite_admittance(lambda, inductance, capacitance)?;
            (r.region.tag(), r.value)
        }
        LadderSpec::General { .. } => {
            return Err(Error::Unsupported("sweeps need an LC or CL ladder".into()))
        }
    };
    Ok(SweepRow {
        lambda: z,
        region,
        admittance: value.finite(),
    })
}

/// Evaluates every grid point, splitting the work across threads; rows come
/// back in row-major order.
pub fn sweep(spec: &LadderSpec, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    if let LadderSpec::General { .. } = spec {
        return Err(Error::Unsupported("sweeps need an LC or CL ladder".into()));
    }
    let total = grid.len();
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(total);
    let chunk = total.div_ceil(workers);
    let parts: Vec<Result<Vec<SweepRow>>> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = w * chunk..((w + 1) * chunk).min(total);
                s.spawn(move || range.map(|i| evaluate(spec, grid.point(i))).collect())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut rows = Vec::with_capacity(total);
    for part in parts {
        rows.extend(part?);
    }
    Ok(rows)
}

pub const CSV_HEADER: [&str; 6] = ["re", "im", "region", "conv", "p_re", "p_im"];

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io(format!("CSV write failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        let (p_re, p_im) = match row.admittance {
            Some(p) => (format_real(p.re), format_real(p.im)),
            None => (String::new(), String::new()),
        };
        w.write_record([
            format_real(row.lambda.re),
            format_real(row.lambda.im),
            row.region.to_string(),
            if row.converges() { "1" } else { "0" }.to_string(),
            p_re,
            p_im,
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Io(format!("CSV write failed: {e}")))?;
    Ok(())
}
