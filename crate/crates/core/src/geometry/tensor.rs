use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Up,
    Down,
}

/// Whether an index pairs with base directions (`dx`, `∂_x`) or fiber
/// directions (`∂̇`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexKind {
    Coordinate,
    Fiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexRole {
    pub variance: Variance,
    pub kind: IndexKind,
}

impl IndexRole {
    pub const DOWN: IndexRole = IndexRole {
        variance: Variance::Down,
        kind: IndexKind::Coordinate,
    };
    pub const UP_FIBER: IndexRole = IndexRole {
        variance: Variance::Up,
        kind: IndexKind::Fiber,
    };
    pub const DOWN_FIBER: IndexRole = IndexRole {
        variance: Variance::Down,
        kind: IndexKind::Fiber,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryTag {
    /// Invariant under every permutation of the listed index positions.
    Symmetric(Vec<usize>),
    Antisymmetric(usize, usize),
}

/// How lower-index fiber vectors `y_i` were formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoweringConvention {
    /// `y_i = g_ij y^j`
    MetricLowering,
    /// `y_i = δ_ij y^j`
    EuclideanLowering,
}

/// Dense multi-index array with index metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorValue {
    pub name: String,
    pub shape: Vec<usize>,
    pub components: Vec<f64>,
    pub roles: Vec<IndexRole>,
    pub symmetries: Vec<SymmetryTag>,
    pub lowering: Option<LoweringConvention>,
    pub notes: Vec<String>,
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

fn unravel(mut k: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for i in (0..shape.len()).rev() {
        idx[i] = k % shape[i];
        k /= shape[i];
    }
    idx
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

impl TensorValue {
    pub fn new(name: impl Into<String>, shape: Vec<usize>, roles: Vec<IndexRole>) -> Self {
        assert_eq!(shape.len(), roles.len(), "one role per index");
        let len = shape.iter().product();
        TensorValue {
            name: name.into(),
            shape,
            components: vec![0.0; len],
            roles,
            symmetries: Vec::new(),
            lowering: None,
            notes: Vec::new(),
        }
    }

    pub fn from_fn(
        name: impl Into<String>,
        shape: Vec<usize>,
        roles: Vec<IndexRole>,
        f: impl Fn(&[usize]) -> f64,
    ) -> Self {
        let mut t = TensorValue::new(name, shape, roles);
        for k in 0..t.components.len() {
            let idx = unravel(k, &t.shape);
            t.components[k] = f(&idx);
        }
        t
    }

    pub fn with_symmetry(mut self, tag: SymmetryTag) -> Self {
        self.symmetries.push(tag);
        self
    }

    pub fn with_lowering(mut self, lowering: LoweringConvention) -> Self {
        self.lowering = Some(lowering);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.shape.len(), "index arity");
        idx.iter()
            .zip(strides(&self.shape))
            .map(|(i, s)| i * s)
            .sum()
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.components[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.components[o] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &TensorValue) -> f64 {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        self.components
            .iter()
            .zip(&other.components)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Contract index `pos` with the vector `v`.
    pub fn contract(&self, pos: usize, v: &[f64]) -> TensorValue {
        assert_eq!(v.len(), self.shape[pos]);
        let mut shape = self.shape.clone();
        shape.remove(pos);
        let mut roles = self.roles.clone();
        roles.remove(pos);
        let name = format!("{}·v[{pos}]", self.name);
        TensorValue::from_fn(name, shape, roles, |idx| {
            let mut full = idx.to_vec();
            full.insert(pos, 0);
            (0..v.len())
                .map(|k| {
                    full[pos] = k;
                    self.get(&full) * v[k]
                })
                .sum()
        })
    }

    /// Largest deviation from the declared symmetry tags.
    pub fn symmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.components.len() {
            let idx = unravel(k, &self.shape);
            let v = self.components[k];
            for tag in &self.symmetries {
                match tag {
                    SymmetryTag::Symmetric(pos) => {
                        let vals: Vec<usize> = pos.iter().map(|&p| idx[p]).collect();
                        for perm in permutations(&(0..pos.len()).collect::<Vec<_>>()) {
                            let mut j = idx.clone();
                            for (slot, &src) in perm.iter().enumerate() {
                                j[pos[slot]] = vals[src];
                            }
                            worst = worst.max((v - self.get(&j)).abs());
                        }
                    }
                    SymmetryTag::Antisymmetric(a, b) => {
                        let mut j = idx.clone();
                        j.swap(*a, *b);
                        worst = worst.max((v + self.get(&j)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Error unless every symmetry tag holds to `rel_tol` of the component scale.
    pub fn check_symmetries(&self, rel_tol: f64) -> Result<f64> {
        let res = self.symmetry_residual();
        if res > rel_tol * self.max_abs().max(1.0) {
            return Err(Error::Inconsistent {
                check: format!("symmetry of {}", self.name),
                residual: res,
            });
        }
        Ok(res)
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|v| v.is_finite())
    }
}
