//! Game instances, strategy kernels, the induced joint law over
//! `(U, W1, W2, V)` and expected costs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::belief::Belief;
use crate::numeric::abs;
use crate::{Error, Result, DERIVED_TOL, PROB_TOL};

/// A dense real matrix, row-major. Rows index the source (or belief)
/// alphabet, columns the decoder's actions.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "cost matrix {rows}×{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged cost matrix".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Expected cost of action `c` under a belief over the rows.
    #[inline]
    pub fn expect(&self, belief: &[f64], c: usize) -> f64 {
        belief.iter().enumerate().map(|(r, q)| q * self.get(r, c)).sum()
    }

    /// `λ·self + μ` entrywise.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| scale * x + shift).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| abs(a - b) <= tol)
    }
}

/// A row-stochastic matrix: `p[a][b]` is the probability of output `b`
/// given input `a`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Kernel {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl Kernel {
    pub fn new(rows: usize, cols: usize, p: Vec<f64>) -> Result<Self> {
        if p.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "kernel {rows}×{cols} needs {} entries, got {}",
                rows * cols,
                p.len()
            )));
        }
        for r in 0..rows {
            let row = &p[r * cols..(r + 1) * cols];
            if let Some(c) = row.iter().position(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::validation(
                    format!("kernel[{r}][{c}]"),
                    "entries must be finite and nonnegative",
                ));
            }
            let s: f64 = row.iter().sum();
            if abs(s - 1.0) > PROB_TOL {
                return Err(Error::validation(
                    format!("kernel[{r}]"),
                    format!("row sums to {s}, expected 1"),
                ));
            }
        }
        Ok(Self { rows, cols, p })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged kernel".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// Builds a kernel and renormalizes rows that drifted by rounding.
    pub(crate) fn from_rows_normalized(rows: usize, cols: usize, mut p: Vec<f64>) -> Self {
        for r in 0..rows {
            let row = &mut p[r * cols..(r + 1) * cols];
            for x in row.iter_mut() {
                if *x < 0.0 {
                    *x = 0.0;
                }
            }
            let s: f64 = row.iter().sum();
            if s > 0.0 {
                row.iter_mut().for_each(|x| *x /= s);
            } else {
                row[0] = 1.0;
            }
        }
        Self { rows, cols, p }
    }

    pub fn identity(n: usize) -> Self {
        let mut p = vec![0.0; n * n];
        for i in 0..n {
            p[i * n + i] = 1.0;
        }
        Self { rows: n, cols: n, p }
    }

    /// Every input mapped to output `out`.
    pub fn constant(rows: usize, cols: usize, out: usize) -> Self {
        let mut p = vec![0.0; rows * cols];
        for r in 0..rows {
            p[r * cols + out] = 1.0;
        }
        Self { rows, cols, p }
    }

    pub fn uniform(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            p: vec![1.0 / cols as f64; rows * cols],
        }
    }

    /// The two-parameter binary kernel `[[1−a, a], [b, 1−b]]`: input 0
    /// flips with probability `a`, input 1 flips with probability `b`.
    pub fn binary(a: f64, b: f64) -> Result<Self> {
        for (name, x) in [("a", a), ("b", b)] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::validation(name, format!("{x} is not a probability")));
            }
        }
        Ok(Self {
            rows: 2,
            cols: 2,
            p: vec![1.0 - a, a, b, 1.0 - b],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.p[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.p[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[f64] {
        &self.p
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Kernel of `self` followed by `next`.
    pub fn compose(&self, next: &Kernel) -> Result<Kernel> {
        if self.cols != next.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}×{} with {}×{}",
                self.rows, self.cols, next.rows, next.cols
            )));
        }
        let mut p = vec![0.0; self.rows * next.cols];
        for a in 0..self.rows {
            for b in 0..self.cols {
                let w = self.get(a, b);
                if w == 0.0 {
                    continue;
                }
                for c in 0..next.cols {
                    p[a * next.cols + c] += w * next.get(b, c);
                }
            }
        }
        Ok(Kernel::from_rows_normalized(self.rows, next.cols, p))
    }

    /// Output distribution when the input is drawn from `input`.
    pub fn push_forward(&self, input: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (a, &w) in input.iter().enumerate() {
            for (c, o) in out.iter_mut().enumerate() {
                *o += w * self.get(a, c);
            }
        }
        out
    }

    /// Row-wise mixture `λ·self + (1−λ)·other`.
    pub fn mix(&self, other: &Kernel, lambda: f64) -> Result<Kernel> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("cannot mix kernels of different shapes".into()));
        }
        let p = self
            .p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        Ok(Kernel::from_rows_normalized(self.rows, self.cols, p))
    }
}

/// A complete game instance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GameSpec {
    pub u_size: usize,
    pub v_size: usize,
    pub w1_size: usize,
    pub w2_size: usize,
    pub prior: Vec<f64>,
    pub cost1: CostMatrix,
    pub cost2: CostMatrix,
    pub cost3: CostMatrix,
    /// Encoder → relay rate, bits per source symbol.
    pub r1: f64,
    /// Relay → decoder rate, bits per source symbol.
    pub r2: f64,
}

impl GameSpec {
    /// Builds a spec with auxiliary alphabets sized like the source alphabet.
    pub fn new(
        prior: Vec<f64>,
        cost1: CostMatrix,
        cost2: CostMatrix,
        cost3: CostMatrix,
        r1: f64,
        r2: f64,
    ) -> Result<Self> {
        let spec = Self {
            u_size: prior.len(),
            v_size: cost1.cols(),
            w1_size: prior.len(),
            w2_size: prior.len(),
            prior,
            cost1,
            cost2,
            cost3,
            r1,
            r2,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The reference binary game: source prior `P(u1) = 0.4`, encoder and
    /// decoder share `[[9, 0], [4, 10]]`, the relay pays 1 whenever the
    /// decoder plays `v1`, and both links run at one bit per symbol.
    pub fn binary_example() -> Self {
        let c13 = CostMatrix::new(2, 2, vec![9.0, 0.0, 4.0, 10.0]).expect("static shape");
        let c2 = CostMatrix::new(2, 2, vec![0.0, 1.0, 0.0, 1.0]).expect("static shape");
        Self::new(vec![0.6, 0.4], c13.clone(), c2, c13, 1.0, 1.0).expect("static spec")
    }

    /// A copy with the binary prior set to `P(u1) = p0`.
    pub fn with_binary_prior(&self, p0: f64) -> Result<Self> {
        if self.u_size != 2 {
            return Err(Error::Unsupported("prior sweeps need a binary source".into()));
        }
        let mut s = self.clone();
        s.prior = vec![1.0 - p0, p0];
        s.validate()?;
        Ok(s)
    }

    pub fn is_binary(&self) -> bool {
        self.u_size == 2 && self.v_size == 2 && self.w1_size == 2 && self.w2_size == 2
    }

    /// `log2 |U|`, the rate at which per-letter transmission is lossless.
    pub fn full_rate(&self) -> f64 {
        crate::numeric::log2(self.u_size as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.u_size < 2 {
            return Err(Error::validation("u_size", "must be at least 2"));
        }
        if self.v_size < 2 {
            return Err(Error::validation("v_size", "must be at least 2"));
        }
        if self.w1_size < 1 {
            return Err(Error::validation("w1_size", "must be at least 1"));
        }
        if self.w2_size < 1 {
            return Err(Error::validation("w2_size", "must be at least 1"));
        }
        if self.prior.len() != self.u_size {
            return Err(Error::validation(
                "prior",
                format!("has {} entries, u_size is {}", self.prior.len(), self.u_size),
            ));
        }
        if let Some(i) = self.prior.iter().position(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::validation(format!("prior[{i}]"), "must be finite and nonnegative"));
        }
        let s: f64 = self.prior.iter().sum();
        if abs(s - 1.0) > PROB_TOL {
            return Err(Error::validation("prior", format!("entries sum to {s}, expected 1")));
        }
        for (name, m) in [("cost1", &self.cost1), ("cost2", &self.cost2), ("cost3", &self.cost3)] {
            if m.rows() != self.u_size || m.cols() != self.v_size {
                return Err(Error::validation(
                    name,
                    format!(
                        "shape {}×{}, expected {}×{}",
                        m.rows(),
                        m.cols(),
                        self.u_size,
                        self.v_size
                    ),
                ));
            }
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_finite() {
                        return Err(Error::validation(format!("{name}[{r}][{c}]"), "not finite"));
                    }
                }
            }
        }
        for (name, r) in [("r1", self.r1), ("r2", self.r2)] {
            if r.is_nan() || r < 0.0 {
                return Err(Error::validation(name, format!("rate {r} is negative")));
            }
        }
        Ok(())
    }

    pub fn prior_belief(&self) -> Belief {
        Belief::new_unchecked(crate::belief::Alphabet::U, self.prior.clone())
    }

    pub fn cost(&self, i: usize) -> &CostMatrix {
        match i {
            1 => &self.cost1,
            2 => &self.cost2,
            3 => &self.cost3,
            _ => panic!("cost index must be 1, 2 or 3"),
        }
    }
}

/// Joint law over `(u, w1, w2, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    sizes: [usize; 4],
    p: Vec<f64>,
}

impl JointDistribution {
    #[inline]
    fn idx(&self, u: usize, a: usize, b: usize, v: usize) -> usize {
        let [_, nw1, nw2, nv] = self.sizes;
        ((u * nw1 + a) * nw2 + b) * nv + v
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    pub fn get(&self, u: usize, w1: usize, w2: usize, v: usize) -> f64 {
        self.p[self.idx(u, w1, w2, v)]
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn marginal_u(&self) -> Vec<f64> {
        let [nu, nw1, nw2, nv] = self.sizes;
        (0..nu)
            .map(|u| {
                let start = u * nw1 * nw2 * nv;
                self.p[start..start + nw1 * nw2 * nv].iter().sum()
            })
            .collect()
    }

    /// Marginal on `(u, v)`, row-major over `u`.
    pub fn marginal_uv(&self) -> Vec<f64> {
        let [nu, nw1, nw2, nv] = self.sizes;
        let mut out = vec![0.0; nu * nv];
        for u in 0..nu {
            for a in 0..nw1 {
                for b in 0..nw2 {
                    for v in 0..nv {
                        out[u * nv + v] += self.get(u, a, b, v);
                    }
                }
            }
        }
        out
    }

    /// Largest violations of `U – W1 – W2` and `W1 – W2 – V`, in that order.
    pub fn markov_residuals(&self) -> (f64, f64) {
        let [nu, nw1, nw2, nv] = self.sizes;
        let mut p_uab = vec![0.0; nu * nw1 * nw2];
        let mut p_ab = vec![0.0; nw1 * nw2];
        let mut p_abv = vec![0.0; nw1 * nw2 * nv];
        let mut p_bv = vec![0.0; nw2 * nv];
        for u in 0..nu {
            for a in 0..nw1 {
                for b in 0..nw2 {
                    for v in 0..nv {
                        let x = self.get(u, a, b, v);
                        p_uab[(u * nw1 + a) * nw2 + b] += x;
                        p_ab[a * nw2 + b] += x;
                        p_abv[(a * nw2 + b) * nv + v] += x;
                        p_bv[b * nv + v] += x;
                    }
                }
            }
        }
        let mut first: f64 = 0.0;
        for u in 0..nu {
            for a in 0..nw1 {
                let p_ua: f64 = (0..nw2).map(|b| p_uab[(u * nw1 + a) * nw2 + b]).sum();
                let p_a: f64 = (0..nw2).map(|b| p_ab[a * nw2 + b]).sum();
                if p_ua <= 0.0 || p_a <= 0.0 {
                    continue;
                }
                for b in 0..nw2 {
                    let lhs = p_uab[(u * nw1 + a) * nw2 + b] / p_ua;
                    let rhs = p_ab[a * nw2 + b] / p_a;
                    first = first.max(abs(lhs - rhs));
                }
            }
        }
        let mut second: f64 = 0.0;
        for a in 0..nw1 {
            for b in 0..nw2 {
                let p_ab_cell = p_ab[a * nw2 + b];
                let p_b: f64 = (0..nv).map(|v| p_bv[b * nv + v]).sum();
                if p_ab_cell <= 0.0 || p_b <= 0.0 {
                    continue;
                }
                for v in 0..nv {
                    let lhs = p_abv[(a * nw2 + b) * nv + v] / p_ab_cell;
                    let rhs = p_bv[b * nv + v] / p_b;
                    second = second.max(abs(lhs - rhs));
                }
            }
        }
        (first, second)
    }
}

/// The product law `P_U · Q_{W1|U} · Q_{W2|W1} · Q_{V|W2}`.
pub fn build_joint(prior: &Belief, k1: &Kernel, k2: &Kernel, k3: &Kernel) -> Result<JointDistribution> {
    let nu = prior.len();
    if k1.rows() != nu {
        return Err(Error::Shape(format!(
            "prior has {nu} symbols but the first kernel has {} rows",
            k1.rows()
        )));
    }
    if k1.cols() != k2.rows() {
        return Err(Error::Shape(format!(
            "first kernel outputs {} symbols, second expects {}",
            k1.cols(),
            k2.rows()
        )));
    }
    if k2.cols() != k3.rows() {
        return Err(Error::Shape(format!(
            "second kernel outputs {} symbols, third expects {}",
            k2.cols(),
            k3.rows()
        )));
    }
    let sizes = [nu, k1.cols(), k2.cols(), k3.cols()];
    let mut p = vec![0.0; nu * sizes[1] * sizes[2] * sizes[3]];
    let mut joint = JointDistribution { sizes, p: Vec::new() };
    for u in 0..nu {
        let pu = prior.p()[u];
        for a in 0..sizes[1] {
            let pa = pu * k1.get(u, a);
            if pa == 0.0 {
                continue;
            }
            for b in 0..sizes[2] {
                let pb = pa * k2.get(a, b);
                if pb == 0.0 {
                    continue;
                }
                for v in 0..sizes[3] {
                    p[joint.idx(u, a, b, v)] = pb * k3.get(b, v);
                }
            }
        }
    }
    joint.p = p;
    debug_assert!(abs(joint.total() - 1.0) < DERIVED_TOL);
    Ok(joint)
}

/// `Σ P(u, v) · cost[u][v]`.
pub fn expected_cost(joint: &JointDistribution, cost: &CostMatrix) -> Result<f64> {
    let [nu, _, _, nv] = joint.sizes;
    if cost.rows() != nu || cost.cols() != nv {
        return Err(Error::Shape(format!(
            "cost is {}×{}, joint is over {nu}×{nv}",
            cost.rows(),
            cost.cols()
        )));
    }
    let uv = joint.marginal_uv();
    Ok(uv
        .iter()
        .enumerate()
        .map(|(i, p)| p * cost.get(i / nv, i % nv))
        .sum())
}

/// Expected costs `(c1, c2, c3)` of a full strategy profile.
pub fn profile_costs(spec: &GameSpec, encoder: &Kernel, relay: &Kernel, decoder: &Kernel) -> Result<[f64; 3]> {
    let joint = build_joint(&spec.prior_belief(), encoder, relay, decoder)?;
    Ok([
        expected_cost(&joint, &spec.cost1)?,
        expected_cost(&joint, &spec.cost2)?,
        expected_cost(&joint, &spec.cost3)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::Alphabet;

    fn prior(p: &[f64]) -> Belief {
        Belief::new(Alphabet::U, p.to_vec()).unwrap()
    }

    #[test]
    fn identity_chain_concentrates_on_diagonal() {
        let id = Kernel::identity(2);
        let j = build_joint(&prior(&[0.5, 0.5]), &id, &id, &id).unwrap();
        assert_eq!(j.get(0, 0, 0, 0), 0.5);
        assert_eq!(j.get(1, 1, 1, 1), 0.5);
        assert!((j.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constant_decoder_marginal() {
        let id = Kernel::identity(2);
        let k3 = Kernel::constant(2, 2, 1);
        let j = build_joint(&prior(&[0.6, 0.4]), &id, &id, &k3).unwrap();
        let uv = j.marginal_uv();
        for (a, b) in uv.iter().zip([0.0, 0.6, 0.0, 0.4]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn mixed_encoder_product_arithmetic() {
        // P(u1, v1) = 0.4 · 0.6 with identities downstream.
        let k1 = Kernel::from_rows(&[vec![0.7, 0.3], vec![0.4, 0.6]]).unwrap();
        let id = Kernel::identity(2);
        let j = build_joint(&prior(&[0.6, 0.4]), &k1, &id, &id).unwrap();
        assert!((j.marginal_uv()[3] - 0.24).abs() < 1e-15);
    }

    #[test]
    fn shape_errors() {
        let k3 = Kernel::identity(3);
        let id = Kernel::identity(2);
        assert!(matches!(
            build_joint(&prior(&[0.5, 0.5]), &id, &k3, &id),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            build_joint(&prior(&[0.5, 0.5]), &k3, &id, &id),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn expected_cost_examples() {
        let spec = GameSpec::binary_example();
        let id = Kernel::identity(2);
        let j = build_joint(&spec.prior_belief(), &id, &id, &id).unwrap();
        assert!((expected_cost(&j, &spec.cost1).unwrap() - 9.4).abs() < 1e-12);

        let j = build_joint(&spec.prior_belief(), &id, &id, &Kernel::constant(2, 2, 1)).unwrap();
        assert!((expected_cost(&j, &spec.cost1).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(expected_cost(&j, &CostMatrix::zeros(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn validation_names_the_field() {
        let mut spec = GameSpec::binary_example();
        spec.prior = vec![0.6, 0.39];
        match spec.validate() {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "prior"),
            other => panic!("{other:?}"),
        }
        let mut spec = GameSpec::binary_example();
        spec.r2 = -0.5;
        assert!(matches!(spec.validate(), Err(Error::Validation { field, .. }) if field == "r2"));
        let mut spec = GameSpec::binary_example();
        spec.cost3.set(1, 0, f64::NAN);
        assert!(matches!(spec.validate(), Err(Error::Validation { field, .. }) if field == "cost3[1][0]"));
    }

    #[test]
    fn kernel_rejects_non_stochastic_rows() {
        assert!(Kernel::from_rows(&[vec![0.5, 0.4], vec![0.0, 1.0]]).is_err());
        assert!(Kernel::from_rows(&[vec![1.2, -0.2], vec![0.0, 1.0]]).is_err());
    }
}
