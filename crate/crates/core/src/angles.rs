//! Corner angle systems: one angle variable per dart, cusp equations,
//! symmetry equalities, optional flatness equations, and an exact rational
//! solver.
//!
//! Right-hand sides are stored in units of pi, so the golden solutions are
//! exact rationals and status classification needs no tolerances. Floats
//! appear only when converting a solution to radians.

use std::collections::BTreeMap;

use num::{BigRational, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::graph::{Dart, RotationGraph};
use crate::{Error, Result};

/// One linear equation: sum of `coeff * x_dart` equals `rhs_pi * pi`.
#[derive(Debug, Clone)]
pub struct Equation {
    pub coeffs: BTreeMap<Dart, BigRational>,
    pub rhs_pi: BigRational,
}

impl Equation {
    fn sum(terms: impl IntoIterator<Item = Dart>, rhs_pi: BigRational) -> Equation {
        let mut coeffs = BTreeMap::new();
        for d in terms {
            let entry = coeffs.entry(d).or_insert_with(BigRational::zero);
            *entry += BigRational::from_integer(1.into());
        }
        Equation { coeffs, rhs_pi }
    }
}

/// A system of equations over the angle variables of one graph.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub var_count: usize,
    pub equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn merged(parts: &[&LinearSystem]) -> Result<LinearSystem> {
        let var_count = parts
            .first()
            .map(|s| s.var_count)
            .ok_or_else(|| Error::Domain("no systems to merge".to_string()))?;
        if parts.iter().any(|s| s.var_count != var_count) {
            return Err(Error::Domain(
                "cannot merge systems over different variable sets".to_string(),
            ));
        }
        Ok(LinearSystem {
            var_count,
            equations: parts.iter().flat_map(|s| s.equations.clone()).collect(),
        })
    }
}

/// One equation per left-hand-turn path: filling the cusp flat forces the
/// corner angles met along the path to close up, so they sum to 2 pi. The
/// corner met at each step is the one indexed by the path's own dart.
pub fn cusp_equations(g: &RotationGraph) -> LinearSystem {
    let equations = g
        .lht_paths()
        .iter()
        .map(|p| {
            Equation::sum(
                p.darts().iter().copied(),
                BigRational::from_integer(2.into()),
            )
        })
        .collect();
    LinearSystem {
        var_count: g.dart_count(),
        equations,
    }
}

/// For each corner orbit `{c1, .., ck}` of the symmetry group, the equalities
/// `c1 - ci = 0`: symmetric surfaces have symmetric angle data.
pub fn symmetry_equalities(var_count: usize, orbits: &[Vec<Dart>]) -> LinearSystem {
    let one = || BigRational::from_integer(1.into());
    let mut equations = Vec::new();
    for orbit in orbits {
        for &other in &orbit[1..] {
            let mut coeffs = BTreeMap::new();
            coeffs.insert(orbit[0], one());
            coeffs.insert(other, -one());
            equations.push(Equation {
                coeffs,
                rhs_pi: BigRational::zero(),
            });
        }
    }
    LinearSystem {
        var_count,
        equations,
    }
}

/// Per-vertex equations `x + y + z = pi`: the three corners of each triangle
/// sum to a straight angle, i.e. the triangles are Euclidean.
fn flat_equations(g: &RotationGraph) -> LinearSystem {
    let equations = (0..g.vertex_count())
        .map(|v| Equation::sum(g.darts_at(v), BigRational::from_integer(1.into())))
        .collect();
    LinearSystem {
        var_count: g.dart_count(),
        equations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AngleStatus {
    Unique,
    Underdetermined { nullity: usize },
    Inconsistent,
}

/// Solution of an angle system.
///
/// `values_pi` holds a particular solution in units of pi: the exact solution
/// when unique, the minimum-norm solution when underdetermined, empty when
/// inconsistent. `in_range` records whether every value lies strictly
/// between 0 and pi.
#[derive(Debug, Clone)]
pub struct AngleSolution {
    pub status: AngleStatus,
    pub values_pi: Vec<BigRational>,
    pub in_range: bool,
}

impl AngleSolution {
    pub fn values_radians(&self) -> Vec<f64> {
        self.values_pi
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI)
            .collect()
    }

    /// Largest absolute residual of the solution in the given system, in
    /// units of pi. Exact arithmetic makes this 0 for consistent systems.
    pub fn max_residual(&self, sys: &LinearSystem) -> BigRational {
        let mut worst = BigRational::zero();
        for eq in &sys.equations {
            let mut lhs = BigRational::zero();
            for (&d, c) in &eq.coeffs {
                lhs += c * &self.values_pi[d];
            }
            let r = (lhs - &eq.rhs_pi).abs();
            if r > worst {
                worst = r;
            }
        }
        worst
    }
}

/// Solve the merged system by exact Gauss-Jordan elimination.
///
/// With `flat = true` the per-triangle equations `x + y + z = pi` are added;
/// that models genus-1 geometry (summing all cusp equations then forces
/// `vertex_count = 2 * path_count`), so other genera are rejected.
pub fn solve_angles(
    g: &RotationGraph,
    sys: &LinearSystem,
    flat: bool,
) -> Result<AngleSolution> {
    if sys.var_count != g.dart_count() {
        return Err(Error::Domain(format!(
            "system has {} variables but the graph has {} darts",
            sys.var_count,
            g.dart_count()
        )));
    }
    let mut full = sys.clone();
    if flat {
        let genus = g.genus();
        if genus != 1 {
            return Err(Error::Domain(format!(
                "flat triangle equations require genus 1, got genus {genus}"
            )));
        }
        debug_assert_eq!(g.vertex_count(), 2 * g.lht_paths().len());
        full.equations.extend(flat_equations(g).equations);
    }

    let n = full.var_count;
    // Dense augmented matrix, rows [coeffs | rhs].
    let mut rows: Vec<Vec<BigRational>> = full
        .equations
        .iter()
        .map(|eq| {
            let mut row = vec![BigRational::zero(); n + 1];
            for (&d, c) in &eq.coeffs {
                row[d] = c.clone();
            }
            row[n] = eq.rhs_pi.clone();
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }

    let inconsistent = rows[rank..]
        .iter()
        .any(|row| !row[n].is_zero() && row[..n].iter().all(|x| x.is_zero()));
    if inconsistent {
        return Ok(AngleSolution {
            status: AngleStatus::Inconsistent,
            values_pi: Vec::new(),
            in_range: false,
        });
    }

    let values_pi = if rank == n {
        let mut values = vec![BigRational::zero(); n];
        for (i, &col) in pivot_cols.iter().enumerate() {
            values[col] = rows[i][n].clone();
        }
        values
    } else {
        minimum_norm_solution(&rows[..rank], n)
    };

    let status = if rank == n {
        AngleStatus::Unique
    } else {
        AngleStatus::Underdetermined { nullity: n - rank }
    };
    let zero = BigRational::zero();
    let one = BigRational::from_i64(1).unwrap();
    let in_range = values_pi.iter().all(|v| *v > zero && *v < one);
    Ok(AngleSolution {
        status,
        values_pi,
        in_range,
    })
}

/// Minimum-Euclidean-norm solution `x = R^T (R R^T)^{-1} c` for the
/// independent reduced rows `[R | c]`.
fn minimum_norm_solution(rows: &[Vec<BigRational>], n: usize) -> Vec<BigRational> {
    let k = rows.len();
    // Gram matrix G = R R^T, augmented with c.
    let mut gram: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|j| (0..n).map(|c| &rows[i][c] * &rows[j][c]).sum())
                .collect();
            row.push(rows[i][n].clone());
            row
        })
        .collect();
    // G is positive definite (rows independent): plain elimination works.
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !gram[r][col].is_zero())
            .expect("Gram matrix of independent rows is invertible");
        gram.swap(col, pivot);
        let p = gram[col][col].clone();
        for x in gram[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..k {
            if r != col && !gram[r][col].is_zero() {
                let factor = gram[r][col].clone();
                for c in col..=k {
                    let delta = &factor * &gram[col][c];
                    gram[r][c] -= delta;
                }
            }
        }
    }
    let y: Vec<BigRational> = (0..k).map(|i| gram[i][k].clone()).collect();
    (0..n)
        .map(|c| (0..k).map(|i| &rows[i][c] * &y[i]).sum())
        .collect()
}
