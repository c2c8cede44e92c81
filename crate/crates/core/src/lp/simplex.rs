//! Dense two-phase primal simplex over exact rationals with Bland's rule.

use serde::Serialize;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub name: String,
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Row {
    pub fn activity(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.activity(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// `min c·x` subject to the rows and `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub var_names: Vec<String>,
    pub objective: Vec<Rational>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>, cost: Rational) -> usize {
        self.var_names.push(name.into());
        self.objective.push(cost);
        self.objective.len() - 1
    }

    pub fn add_row(&mut self, name: impl Into<String>, coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars()));
        self.rows.push(Row { name: name.into(), coeffs, sense, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars() && x.iter().all(|v| !v.is_negative()) && self.rows.iter().all(|r| r.satisfied_by(x))
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Rows tight at `x` (equalities always count).
    pub fn tight_rows(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| self.rows[i].activity(x) == self.rows[i].rhs).collect()
    }

    /// Rank of the constraints tight at `x`, bounds `x_j ≥ 0` included.
    pub fn tight_rank(&self, x: &[Rational]) -> usize {
        let n = self.num_vars();
        let mut mat: Vec<Vec<Rational>> = Vec::new();
        for i in self.tight_rows(x) {
            let mut row = vec![Rational::zero(); n];
            for (j, a) in &self.rows[i].coeffs {
                row[*j] += a;
            }
            mat.push(row);
        }
        for (j, v) in x.iter().enumerate() {
            if v.is_zero() {
                let mut row = vec![Rational::zero(); n];
                row[j] = Rational::one();
                mat.push(row);
            }
        }
        rank(mat, n)
    }

    /// CPLEX LP text format. Non-integer coefficients are written as
    /// decimals, so the dump is exact only for integral data (which LPA is).
    pub fn to_lp_text(&self) -> String {
        fn num(r: &Rational) -> String {
            match r.to_i64() {
                Some(v) => v.to_string(),
                None => format!("{}", r.to_f64()),
            }
        }
        fn terms(names: &[String], coeffs: &[(usize, Rational)]) -> String {
            let mut s = String::new();
            for (j, a) in coeffs {
                if a.is_zero() {
                    continue;
                }
                let sign = if a.is_negative() { "-" } else { "+" };
                let mag = a.abs();
                if mag.is_one() {
                    s.push_str(&format!(" {sign} {}", names[*j]));
                } else {
                    s.push_str(&format!(" {sign} {} {}", num(&mag), names[*j]));
                }
            }
            if s.is_empty() {
                s.push_str(" 0");
            }
            s
        }
        let mut out = String::from("Minimize\n obj:");
        let obj: Vec<(usize, Rational)> = self.objective.iter().cloned().enumerate().collect();
        out.push_str(&terms(&self.var_names, &obj));
        out.push_str("\nSubject To\n");
        for r in &self.rows {
            let op = match r.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
                Sense::Eq => "=",
            };
            out.push_str(&format!(" {}:{} {op} {}\n", r.name, terms(&self.var_names, &r.coeffs), num(&r.rhs)));
        }
        out.push_str("Bounds\n");
        for name in &self.var_names {
            out.push_str(&format!(" {name} >= 0\n"));
        }
        out.push_str("End\n");
        out
    }
}

pub fn rank(mut mat: Vec<Vec<Rational>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else { continue };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        let pivot: Vec<Rational> = mat[r].iter().map(|v| v * &inv).collect();
        for i in r + 1..mat.len() {
            if mat[i][c].is_zero() {
                continue;
            }
            let f = mat[i][c].clone();
            for j in c..cols {
                if !pivot[j].is_zero() {
                    let d = &f * &pivot[j];
                    mat[i][j] -= &d;
                }
            }
        }
        mat[r] = pivot;
        r += 1;
    }
    r
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// One multiplier per row: `≤ 0` on `Le` rows, `≥ 0` on `Ge` rows.
    pub duals: Vec<Rational>,
    pub tight_rows: Vec<usize>,
    /// Rank of the tight system; equals the variable count at a vertex.
    pub tight_rank: usize,
    pub pivots: usize,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// Row multipliers `y` (`≥ 0` on `Le`, `≤ 0` on `Ge`) with `yA ≥ 0`
    /// and `y·b < 0`.
    Infeasible { farkas: Vec<Rational> },
    /// A feasible point and a direction of unbounded descent.
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Checks a Farkas certificate against `lp`.
pub fn is_farkas_certificate(lp: &LinearProgram, y: &[Rational]) -> bool {
    if y.len() != lp.rows.len() {
        return false;
    }
    let mut combo = vec![Rational::zero(); lp.num_vars()];
    let mut rhs = Rational::zero();
    for (row, yi) in lp.rows.iter().zip(y) {
        let sign_ok = match row.sense {
            Sense::Le => !yi.is_negative(),
            Sense::Ge => !yi.is_positive(),
            Sense::Eq => true,
        };
        if !sign_ok {
            return false;
        }
        for (j, a) in &row.coeffs {
            combo[*j] += &(a * yi);
        }
        rhs += &(&row.rhs * yi);
    }
    combo.iter().all(|c| !c.is_negative()) && rhs.is_negative()
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    basis: Vec<usize>,
    d: Vec<Rational>,
    z: Rational,
    pivots: usize,
}

impl Tableau {
    fn price(&mut self, cost: &[Rational]) {
        self.d = cost.to_vec();
        self.z = Rational::zero();
        for i in 0..self.t.len() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.t[i].iter().enumerate() {
                if !a.is_zero() {
                    self.d[j] -= &(cb * a);
                }
            }
            self.z += &(cb * &self.b[i]);
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        self.pivots += 1;
        let inv = self.t[r][q].recip();
        if !inv.is_one() {
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.b[r] *= &inv;
        }
        let nz: Vec<usize> = (0..self.t[r].len()).filter(|&j| !self.t[r][j].is_zero()).collect();
        let (prow, pb) = (self.t[r].clone(), self.b[r].clone());
        for i in 0..self.t.len() {
            if i == r || self.t[i][q].is_zero() {
                continue;
            }
            let f = self.t[i][q].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.t[i][j] -= &d;
            }
            self.b[i] -= &(&f * &pb);
        }
        if !self.d[q].is_zero() {
            let f = self.d[q].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.d[j] -= &d;
            }
            self.z += &(&f * &pb);
        }
        self.basis[r] = q;
    }

    /// Bland's rule; `Err(q)` reports an unbounded column.
    fn run(&mut self, allowed: &[bool]) -> Result<(), usize> {
        loop {
            let Some(q) = (0..self.d.len()).find(|&j| allowed[j] && self.d[j].is_negative()) else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][q].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.t[i][q];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, q),
                None => return Err(q),
            }
        }
    }
}

pub fn simplex_solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();
    let m = lp.rows.len();
    let mut flip = vec![false; m];
    let mut sense = Vec::with_capacity(m);
    for (i, row) in lp.rows.iter().enumerate() {
        flip[i] = row.rhs.is_negative();
        sense.push(match (row.sense, flip[i]) {
            (Sense::Le, true) => Sense::Ge,
            (Sense::Ge, true) => Sense::Le,
            (s, _) => s,
        });
    }
    let slacks = sense.iter().filter(|&&s| s != Sense::Eq).count();
    let arts = sense.iter().filter(|&&s| s != Sense::Le).count();
    let width = n + slacks + arts;
    let mut t = vec![vec![Rational::zero(); width]; m];
    let mut b = vec![Rational::zero(); m];
    let mut basis = vec![0; m];
    let mut ident = vec![0; m];
    let (mut next_slack, mut next_art) = (n, n + slacks);
    for (i, row) in lp.rows.iter().enumerate() {
        let s: Rational = if flip[i] { -Rational::one() } else { Rational::one() };
        for (j, a) in &row.coeffs {
            t[i][*j] += &(a * &s);
        }
        b[i] = &row.rhs * &s;
        match sense[i] {
            Sense::Le => {
                t[i][next_slack] = Rational::one();
                ident[i] = next_slack;
                next_slack += 1;
            }
            Sense::Ge => {
                t[i][next_slack] = -Rational::one();
                next_slack += 1;
                t[i][next_art] = Rational::one();
                ident[i] = next_art;
                next_art += 1;
            }
            Sense::Eq => {
                t[i][next_art] = Rational::one();
                ident[i] = next_art;
                next_art += 1;
            }
        }
        basis[i] = ident[i];
    }
    let is_art = |j: usize| j >= n + slacks;
    let mut tab = Tableau { t, b, basis, d: Vec::new(), z: Rational::zero(), pivots: 0 };

    if arts > 0 {
        let cost1: Vec<Rational> = (0..width).map(|j| if is_art(j) { Rational::one() } else { Rational::zero() }).collect();
        tab.price(&cost1);
        tab.run(&vec![true; width]).expect("phase 1 is bounded below");
        if tab.z.is_positive() {
            let farkas: Vec<Rational> = (0..m)
                .map(|i| {
                    let pi = &cost1[ident[i]] - &tab.d[ident[i]];
                    if flip[i] {
                        pi
                    } else {
                        -pi
                    }
                })
                .collect();
            assert!(is_farkas_certificate(lp, &farkas), "phase 1 produced an invalid Farkas certificate");
            return LpOutcome::Infeasible { farkas };
        }
        // drive zero-level artificials out where possible
        for i in 0..m {
            if is_art(tab.basis[i]) {
                if let Some(q) = (0..n + slacks).find(|&j| !tab.t[i][j].is_zero()) {
                    tab.pivot(i, q);
                }
            }
        }
    }

    let mut cost2 = vec![Rational::zero(); width];
    cost2[..n].clone_from_slice(&lp.objective);
    tab.price(&cost2);
    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    let outcome = tab.run(&allowed);
    let mut x = vec![Rational::zero(); n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.b[i].clone();
        }
    }
    if let Err(q) = outcome {
        let mut ray = vec![Rational::zero(); n];
        if q < n {
            ray[q] = Rational::one();
        }
        for i in 0..m {
            if tab.basis[i] < n {
                ray[tab.basis[i]] = -&tab.t[i][q];
            }
        }
        return LpOutcome::Unbounded { point: x, ray };
    }
    let duals = (0..m)
        .map(|i| {
            let pi = &cost2[ident[i]] - &tab.d[ident[i]];
            if flip[i] {
                -pi
            } else {
                pi
            }
        })
        .collect();
    let objective = lp.value(&x);
    debug_assert_eq!(objective, tab.z);
    let tight_rank = lp.tight_rank(&x);
    assert_eq!(tight_rank, n, "simplex returned a non-vertex");
    LpOutcome::Optimal(LpSolution {
        tight_rows: lp.tight_rows(&x),
        x,
        objective,
        duals,
        tight_rank,
        pivots: tab.pivots,
    })
}
