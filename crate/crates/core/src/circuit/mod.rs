//! Arithmetic circuits as straight-line programs over `F_p`.
//!
//! Gates are stored in topological order: every operand id is smaller than
//! the id of the gate using it. Size is the number of edges, i.e. twice the
//! number of `Add`/`Mul` gates.

pub mod expand;
pub mod slp;
pub mod transform;

use std::collections::HashMap;

use crate::algebra::{FieldElement, PrimeField};
use crate::error::{Error, Result};

pub use expand::{expand, expand_mod_ideal, from_dense};
pub use slp::{parse_circuit, read_circuit, serialize_circuit, write_circuit};
pub use transform::{
    homogeneous_components, linear_combination, substitute_affine, y_coefficients, AffineExpr,
};

pub type GateId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// Variable index, 0-based.
    Input(usize),
    Const(FieldElement),
    Add(GateId, GateId),
    Mul(GateId, GateId),
}

impl Gate {
    pub fn is_binary(&self) -> bool {
        matches!(self, Gate::Add(..) | Gate::Mul(..))
    }

    fn operands(&self) -> Option<(GateId, GateId)> {
        match *self {
            Gate::Add(a, b) | Gate::Mul(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    field: PrimeField,
    nvars: usize,
    gates: Vec<Gate>,
    outputs: Vec<GateId>,
}

impl Circuit {
    /// Validates topological order, variable indices and output ids.
    pub fn new(
        field: PrimeField,
        nvars: usize,
        gates: Vec<Gate>,
        outputs: Vec<GateId>,
    ) -> Result<Self> {
        for (id, g) in gates.iter().enumerate() {
            match *g {
                Gate::Input(v) if v >= nvars => {
                    return Err(Error::Structural(format!(
                        "gate {id} reads variable {v} but the circuit has {nvars}"
                    )))
                }
                Gate::Const(c) if c.field() != field => {
                    return Err(Error::Structural(format!(
                        "gate {id} holds a constant from another field"
                    )))
                }
                Gate::Add(a, b) | Gate::Mul(a, b) if a >= id || b >= id => {
                    return Err(Error::Structural(format!(
                        "gate {id} uses an operand that is not defined before it"
                    )))
                }
                _ => {}
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= gates.len()) {
            return Err(Error::Structural(format!("output gate {o} does not exist")));
        }
        Ok(Circuit {
            field,
            nvars,
            gates,
            outputs,
        })
    }

    /// Single-output circuit computing `x_i`.
    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Circuit {
        let mut b = CircuitBuilder::new(field, nvars);
        let g = b.input(i);
        b.finish(vec![g])
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Circuit {
        let mut b = CircuitBuilder::new(c.field(), nvars);
        let g = b.constant(c);
        b.finish(vec![g])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[GateId] {
        &self.outputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        2 * self.gates.iter().filter(|g| g.is_binary()).count()
    }

    /// One value per output.
    pub fn eval(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let vals = self.eval_gates(point)?;
        Ok(self.outputs.iter().map(|&o| vals[o]).collect())
    }

    /// Values of every gate.
    pub fn eval_gates(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if point.len() != self.nvars {
            return Err(Error::Structural(format!(
                "point has {} coordinates, circuit has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut vals: Vec<FieldElement> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match *g {
                Gate::Input(i) => point[i],
                Gate::Const(c) => c,
                Gate::Add(a, b) => vals[a] + vals[b],
                Gate::Mul(a, b) => vals[a] * vals[b],
            };
            vals.push(v);
        }
        Ok(vals)
    }

    /// Formal degree range `[lo, hi]` of every gate, `None` for gates that are
    /// structurally zero. `hi` saturates.
    pub fn degree_ranges(&self) -> Vec<Option<(u64, u64)>> {
        let mut out: Vec<Option<(u64, u64)>> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let r = match *g {
                Gate::Input(_) => Some((1, 1)),
                Gate::Const(c) => (!c.is_zero()).then_some((0, 0)),
                Gate::Add(a, b) => match (out[a], out[b]) {
                    (Some((l1, h1)), Some((l2, h2))) => Some((l1.min(l2), h1.max(h2))),
                    (x, None) | (None, x) => x,
                },
                Gate::Mul(a, b) => match (out[a], out[b]) {
                    (Some((l1, h1)), Some((l2, h2))) => {
                        Some((l1.saturating_add(l2), h1.saturating_add(h2)))
                    }
                    _ => None,
                },
            };
            out.push(r);
        }
        out
    }

    /// Upper bound on the total degree of each output (formal, saturating).
    pub fn formal_degrees(&self) -> Vec<u64> {
        let r = self.degree_ranges();
        self.outputs
            .iter()
            .map(|&o| r[o].map_or(0, |(_, h)| h))
            .collect()
    }

    /// Drops gates outside the cone of the outputs and renumbers.
    pub fn prune(&self) -> Circuit {
        self.select(&(0..self.outputs.len()).collect::<Vec<_>>())
    }

    /// Keeps the outputs at positions `which`, pruned to their cone.
    pub fn select(&self, which: &[usize]) -> Circuit {
        let outs: Vec<GateId> = which.iter().map(|&i| self.outputs[i]).collect();
        let mut live = vec![false; self.gates.len()];
        for &o in &outs {
            live[o] = true;
        }
        for id in (0..self.gates.len()).rev() {
            if live[id] {
                if let Some((a, b)) = self.gates[id].operands() {
                    live[a] = true;
                    live[b] = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (id, g) in self.gates.iter().enumerate() {
            if !live[id] {
                continue;
            }
            remap[id] = gates.len();
            gates.push(match *g {
                Gate::Add(a, b) => Gate::Add(remap[a], remap[b]),
                Gate::Mul(a, b) => Gate::Mul(remap[a], remap[b]),
                other => other,
            });
        }
        Circuit {
            field: self.field,
            nvars: self.nvars,
            gates,
            outputs: outs.iter().map(|&o| remap[o]).collect(),
        }
    }

    /// Re-embeds into `nvars` variables; fails if a dropped variable is read.
    pub fn with_nvars(&self, nvars: usize) -> Result<Circuit> {
        Circuit::new(self.field, nvars, self.gates.clone(), self.outputs.clone())
    }

    /// Whether any gate in the output cone reads variable `v`.
    pub fn reads_var(&self, v: usize) -> bool {
        self.prune()
            .gates
            .iter()
            .any(|g| matches!(g, Gate::Input(i) if *i == v))
    }
}

/// Incremental circuit construction with deduplicated leaves.
///
/// The folding builder simplifies operations on constants (`0 + a`, `1 * a`,
/// constant arithmetic). The raw builder never folds binary gates, so the
/// size of a construction depends only on its shape and not on the values
/// that flow through it.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    field: PrimeField,
    nvars: usize,
    gates: Vec<Gate>,
    consts: Vec<Option<FieldElement>>,
    input_ids: HashMap<usize, GateId>,
    const_ids: HashMap<u64, GateId>,
    fold: bool,
}

impl CircuitBuilder {
    pub fn new(field: PrimeField, nvars: usize) -> Self {
        CircuitBuilder {
            field,
            nvars,
            gates: Vec::new(),
            consts: Vec::new(),
            input_ids: HashMap::new(),
            const_ids: HashMap::new(),
            fold: true,
        }
    }

    pub fn raw(field: PrimeField, nvars: usize) -> Self {
        CircuitBuilder {
            fold: false,
            ..CircuitBuilder::new(field, nvars)
        }
    }

    /// Starts from an existing circuit, keeping its gate ids.
    pub fn from_circuit(c: &Circuit, fold: bool) -> Self {
        let mut b = CircuitBuilder {
            fold,
            ..CircuitBuilder::new(c.field, c.nvars)
        };
        for g in &c.gates {
            let id = b.gates.len();
            let cv = match *g {
                Gate::Input(i) => {
                    b.input_ids.entry(i).or_insert(id);
                    None
                }
                Gate::Const(v) => {
                    b.const_ids.entry(v.value()).or_insert(id);
                    Some(v)
                }
                _ => None,
            };
            b.gates.push(*g);
            b.consts.push(cv);
        }
        b
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn size(&self) -> usize {
        2 * self.gates.iter().filter(|g| g.is_binary()).count()
    }

    fn push(&mut self, g: Gate, c: Option<FieldElement>) -> GateId {
        self.gates.push(g);
        self.consts.push(c);
        self.gates.len() - 1
    }

    /// Panics if `i` is out of range.
    pub fn input(&mut self, i: usize) -> GateId {
        assert!(i < self.nvars, "variable {i} out of range");
        if let Some(&id) = self.input_ids.get(&i) {
            return id;
        }
        let id = self.push(Gate::Input(i), None);
        self.input_ids.insert(i, id);
        id
    }

    pub fn constant(&mut self, c: FieldElement) -> GateId {
        if let Some(&id) = self.const_ids.get(&c.value()) {
            return id;
        }
        let id = self.push(Gate::Const(c), Some(c));
        self.const_ids.insert(c.value(), id);
        id
    }

    pub fn zero(&mut self) -> GateId {
        self.constant(self.field.zero())
    }

    pub fn one(&mut self) -> GateId {
        self.constant(self.field.one())
    }

    /// The constant value of a gate, if it is a known constant.
    pub fn const_value(&self, g: GateId) -> Option<FieldElement> {
        self.consts[g]
    }

    pub fn add(&mut self, a: GateId, b: GateId) -> GateId {
        if self.fold {
            match (self.consts[a], self.consts[b]) {
                (Some(x), Some(y)) => return self.constant(x + y),
                (Some(x), None) if x.is_zero() => return b,
                (None, Some(y)) if y.is_zero() => return a,
                _ => {}
            }
        }
        self.push(Gate::Add(a, b), None)
    }

    pub fn mul(&mut self, a: GateId, b: GateId) -> GateId {
        if self.fold {
            match (self.consts[a], self.consts[b]) {
                (Some(x), Some(y)) => return self.constant(x * y),
                (Some(x), _) if x.is_zero() => return a,
                (_, Some(y)) if y.is_zero() => return b,
                (Some(x), None) if x.is_one() => return b,
                (None, Some(y)) if y.is_one() => return a,
                _ => {}
            }
        }
        self.push(Gate::Mul(a, b), None)
    }

    /// `c * a`; multiplying by 0 or 1 never costs a gate.
    pub fn scale(&mut self, a: GateId, c: FieldElement) -> GateId {
        if c.is_zero() {
            return self.zero();
        }
        if c.is_one() {
            return a;
        }
        let k = self.constant(c);
        self.mul(k, a)
    }

    pub fn neg(&mut self, a: GateId) -> GateId {
        self.scale(a, -self.field.one())
    }

    pub fn sub(&mut self, a: GateId, b: GateId) -> GateId {
        let nb = self.neg(b);
        self.add(a, nb)
    }

    /// Left-leaning addition ladder; zero for an empty slice.
    pub fn sum(&mut self, terms: &[GateId]) -> GateId {
        match terms.split_first() {
            None => self.zero(),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &t| self.add(acc, t)),
        }
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&mut self, a: GateId, e: u64) -> GateId {
        if e == 0 {
            return self.one();
        }
        let mut acc: Option<GateId> = None;
        for bit in (0..64 - e.leading_zeros()).rev() {
            if let Some(x) = acc {
                acc = Some(self.mul(x, x));
            }
            if (e >> bit) & 1 == 1 {
                acc = Some(match acc {
                    None => a,
                    Some(x) => self.mul(x, a),
                });
            }
        }
        acc.unwrap()
    }

    /// Copies `c` into this builder with its inputs wired to `inputs`;
    /// returns the ids of its outputs.
    pub fn import(&mut self, c: &Circuit, inputs: &[GateId]) -> Result<Vec<GateId>> {
        let map = self.import_gates(c, inputs)?;
        Ok(c.outputs.iter().map(|&o| map[o]).collect())
    }

    /// Like [`import`](Self::import) but returns the id of every copied gate.
    pub fn import_gates(&mut self, c: &Circuit, inputs: &[GateId]) -> Result<Vec<GateId>> {
        if inputs.len() != c.nvars {
            return Err(Error::Structural(format!(
                "import: circuit has {} variables, {} inputs supplied",
                c.nvars,
                inputs.len()
            )));
        }
        if c.field != self.field {
            return Err(Error::Structural("import: field mismatch".into()));
        }
        let mut map = Vec::with_capacity(c.gates.len());
        for g in &c.gates {
            let id = match *g {
                Gate::Input(i) => inputs[i],
                Gate::Const(v) => self.constant(v),
                Gate::Add(a, b) => self.add(map[a], map[b]),
                Gate::Mul(a, b) => self.mul(map[a], map[b]),
            };
            map.push(id);
        }
        Ok(map)
    }

    pub fn finish(self, outputs: Vec<GateId>) -> Circuit {
        assert!(outputs.iter().all(|&o| o < self.gates.len()));
        Circuit {
            field: self.field,
            nvars: self.nvars,
            gates: self.gates,
            outputs,
        }
    }
}

/// A random single-output circuit with `ngates` gates over `nvars`
/// variables, for testing. With `max_degree`, multiplications that would
/// push the formal degree past the bound are replaced by additions.
pub fn random_circuit<R: rand::Rng + ?Sized>(
    field: PrimeField,
    rng: &mut R,
    nvars: usize,
    ngates: usize,
    max_degree: Option<u64>,
) -> Circuit {
    let mut b = CircuitBuilder::raw(field, nvars);
    let mut pool: Vec<(GateId, u64)> = (0..nvars).map(|v| (b.input(v), 1)).collect();
    pool.push((b.constant(field.random(rng)), 0));
    while b.len() < ngates {
        let (x, dx) = pool[rng.gen_range(0..pool.len())];
        let (y, dy) = pool[rng.gen_range(0..pool.len())];
        let fits = max_degree.map_or(true, |m| dx + dy <= m);
        let g = if fits && rng.gen_bool(0.5) {
            (b.mul(x, y), dx + dy)
        } else {
            (b.add(x, y), dx.max(dy))
        };
        pool.push(g);
        if rng.gen_bool(0.15) {
            pool.push((b.constant(field.random(rng)), 0));
        }
    }
    let out = pool[pool.len() - 1].0;
    b.finish(vec![out])
}
