//! Term graphs: morphisms of the free gs-monoidal category over a signature.
//!
//! A term graph is an acyclic box-and-wire graph. Every wire has exactly one
//! producer (an interface input or a box output port) and any number of
//! consumers; a wire consumed twice is a shared subterm (a duplicator), a
//! wire consumed zero times is discarded (a discharger). There is no garbage
//! collection: a box whose outputs are all discarded is still part of the
//! graph, which is exactly the non-naturality of the discharger.
//!
//! Equality of term graphs is interface-preserving isomorphism, decided by
//! canonical labeling (iterative refinement with backtracking on ties).
//! Evaluation into any concrete model is the strict gs-monoidal functor
//! extending a sort/operation assignment, built as a deterministic layering
//! of boxes interleaved with duplicators, dischargers and symmetries.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::GsCategory;
use crate::error::{Error, Result};
use crate::report::{fnv1a, FNV_PRIME};

pub type SortId = usize;
pub type OpId = usize;
pub type WireId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpDecl {
    pub name: String,
    pub inputs: Vec<SortId>,
    pub outputs: Vec<SortId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub sorts: Vec<String>,
    pub ops: Vec<OpDecl>,
}

impl Signature {
    pub fn sort_id(&self, name: &str) -> Option<SortId> {
        self.sorts.iter().position(|s| s == name)
    }

    pub fn op_id(&self, name: &str) -> Option<OpId> {
        self.ops.iter().position(|o| o.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Producer {
    Input(usize),
    BoxOut(usize, usize),
}

#[derive(Debug, Clone)]
struct Wire {
    sort: SortId,
    producer: Producer,
}

#[derive(Debug, Clone)]
struct BoxNode {
    op: OpId,
    ins: Vec<WireId>,
    outs: Vec<WireId>,
}

/// Structural equality is deliberately not derived: term graphs compare via
/// [`tg_equal`], i.e. up to interface-preserving isomorphism.
#[derive(Debug, Clone)]
pub struct TermGraph {
    inputs: Vec<SortId>,
    outputs: Vec<WireId>,
    wires: Vec<Wire>,
    boxes: Vec<BoxNode>,
}

impl TermGraph {
    pub fn input_word(&self) -> &[SortId] {
        &self.inputs
    }

    pub fn output_word(&self) -> Vec<SortId> {
        self.outputs.iter().map(|&w| self.wires[w].sort).collect()
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    pub fn wire_count(&self) -> usize {
        self.wires.len()
    }

    /// The identity on a word: one pass-through wire per letter.
    pub fn id(word: &[SortId]) -> TermGraph {
        TermGraph {
            inputs: word.to_vec(),
            outputs: (0..word.len()).collect(),
            wires: word
                .iter()
                .enumerate()
                .map(|(k, &sort)| Wire {
                    sort,
                    producer: Producer::Input(k),
                })
                .collect(),
            boxes: vec![],
        }
    }

    /// One box with fresh input and output wires.
    pub fn from_op(sig: &Signature, op: OpId) -> TermGraph {
        let decl = &sig.ops[op];
        let mut wires: Vec<Wire> = decl
            .inputs
            .iter()
            .enumerate()
            .map(|(k, &sort)| Wire {
                sort,
                producer: Producer::Input(k),
            })
            .collect();
        let ins: Vec<WireId> = (0..decl.inputs.len()).collect();
        let outs: Vec<WireId> = (0..decl.outputs.len())
            .map(|j| {
                wires.push(Wire {
                    sort: decl.outputs[j],
                    producer: Producer::BoxOut(0, j),
                });
                wires.len() - 1
            })
            .collect();
        TermGraph {
            inputs: decl.inputs.clone(),
            outputs: outs.clone(),
            wires,
            boxes: vec![BoxNode { op, ins, outs }],
        }
    }

    /// γ: swaps two blocks of wires.
    pub fn symmetry(w1: &[SortId], w2: &[SortId]) -> TermGraph {
        let mut g = TermGraph::id(&[w1, w2].concat());
        g.outputs = (w1.len()..w1.len() + w2.len())
            .chain(0..w1.len())
            .collect();
        g
    }

    /// ∇: every wire consumed twice by the output interface.
    pub fn dup(word: &[SortId]) -> TermGraph {
        let mut g = TermGraph::id(word);
        g.outputs = (0..word.len()).chain(0..word.len()).collect();
        g
    }

    /// !: every wire consumed zero times.
    pub fn discharge(word: &[SortId]) -> TermGraph {
        let mut g = TermGraph::id(word);
        g.outputs = vec![];
        g
    }

    /// Glues `s`'s output wires onto `t`'s input wires.
    pub fn compose(t: &TermGraph, s: &TermGraph) -> Result<TermGraph> {
        if s.outputs.len() != t.inputs.len() {
            return Err(Error::InterfaceMismatch(format!(
                "compose: {} outputs vs {} inputs",
                s.outputs.len(),
                t.inputs.len()
            )));
        }
        for (k, &w) in s.outputs.iter().enumerate() {
            if s.wires[w].sort != t.inputs[k] {
                return Err(Error::SortMismatch(format!(
                    "compose: output {} has sort {}, input expects {}",
                    k, s.wires[w].sort, t.inputs[k]
                )));
            }
        }
        let mut wires = s.wires.clone();
        let mut boxes = s.boxes.clone();
        let box_offset = s.boxes.len();
        // map t's wires into the glued graph
        let mut wire_map = vec![usize::MAX; t.wires.len()];
        for (w, wire) in t.wires.iter().enumerate() {
            match wire.producer {
                Producer::Input(k) => {
                    wire_map[w] = s.outputs[k];
                }
                Producer::BoxOut(b, j) => {
                    wires.push(Wire {
                        sort: wire.sort,
                        producer: Producer::BoxOut(b + box_offset, j),
                    });
                    wire_map[w] = wires.len() - 1;
                }
            }
        }
        for bx in &t.boxes {
            boxes.push(BoxNode {
                op: bx.op,
                ins: bx.ins.iter().map(|&w| wire_map[w]).collect(),
                outs: bx.outs.iter().map(|&w| wire_map[w]).collect(),
            });
        }
        Ok(TermGraph {
            inputs: s.inputs.clone(),
            outputs: t.outputs.iter().map(|&w| wire_map[w]).collect(),
            wires,
            boxes,
        })
    }

    /// Disjoint union with concatenated interfaces.
    pub fn tensor(s: &TermGraph, t: &TermGraph) -> TermGraph {
        let wire_offset = s.wires.len();
        let box_offset = s.boxes.len();
        let input_offset = s.inputs.len();
        let mut wires = s.wires.clone();
        wires.extend(t.wires.iter().map(|w| Wire {
            sort: w.sort,
            producer: match w.producer {
                Producer::Input(k) => Producer::Input(k + input_offset),
                Producer::BoxOut(b, j) => Producer::BoxOut(b + box_offset, j),
            },
        }));
        let mut boxes = s.boxes.clone();
        boxes.extend(t.boxes.iter().map(|b| BoxNode {
            op: b.op,
            ins: b.ins.iter().map(|&w| w + wire_offset).collect(),
            outs: b.outs.iter().map(|&w| w + wire_offset).collect(),
        }));
        TermGraph {
            inputs: [s.inputs.clone(), t.inputs.clone()].concat(),
            outputs: s
                .outputs
                .iter()
                .copied()
                .chain(t.outputs.iter().map(|&w| w + wire_offset))
                .collect(),
            wires,
            boxes,
        }
    }

    /// Consistency of producers, sorts and acyclicity.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        let mut input_seen = vec![false; self.inputs.len()];
        for (w, wire) in self.wires.iter().enumerate() {
            if wire.sort >= sig.sorts.len() {
                return Err(Error::SortMismatch(format!("wire {} has unknown sort", w)));
            }
            match wire.producer {
                Producer::Input(k) => {
                    if k >= self.inputs.len() || input_seen[k] {
                        return Err(Error::InterfaceMismatch(format!(
                            "input {} produces more than one wire or is out of range",
                            k
                        )));
                    }
                    if self.inputs[k] != wire.sort {
                        return Err(Error::SortMismatch(format!("input {} sort mismatch", k)));
                    }
                    input_seen[k] = true;
                }
                Producer::BoxOut(b, j) => {
                    let bx = self
                        .boxes
                        .get(b)
                        .ok_or_else(|| Error::InterfaceMismatch(format!("wire {} from unknown box", w)))?;
                    if bx.outs.get(j) != Some(&w) {
                        return Err(Error::InterfaceMismatch(format!(
                            "wire {} does not match box {} port {}",
                            w, b, j
                        )));
                    }
                }
            }
        }
        if !input_seen.into_iter().all(|b| b) {
            return Err(Error::InterfaceMismatch("an input produces no wire".into()));
        }
        for (b, bx) in self.boxes.iter().enumerate() {
            let decl = sig
                .ops
                .get(bx.op)
                .ok_or_else(|| Error::InterfaceMismatch(format!("box {} has unknown op", b)))?;
            if bx.ins.len() != decl.inputs.len() || bx.outs.len() != decl.outputs.len() {
                return Err(Error::InterfaceMismatch(format!("box {} arity mismatch", b)));
            }
            for (slot, &w) in bx.ins.iter().enumerate() {
                if self.wires[w].sort != decl.inputs[slot] {
                    return Err(Error::SortMismatch(format!("box {} input {}", b, slot)));
                }
            }
            for (port, &w) in bx.outs.iter().enumerate() {
                if self.wires[w].sort != decl.outputs[port]
                    || self.wires[w].producer != Producer::BoxOut(b, port)
                {
                    return Err(Error::InterfaceMismatch(format!("box {} output {}", b, port)));
                }
            }
        }
        for &w in &self.outputs {
            if w >= self.wires.len() {
                return Err(Error::InterfaceMismatch("output lists unknown wire".into()));
            }
        }
        // acyclicity over the box dependency relation
        self.topo_order().map(|_| ())
    }

    fn topo_order(&self) -> Result<Vec<usize>> {
        let mut order = Vec::new();
        let mut done = vec![false; self.boxes.len()];
        loop {
            let before = order.len();
            for (b, bx) in self.boxes.iter().enumerate() {
                if done[b] {
                    continue;
                }
                let ready = bx.ins.iter().all(|&w| match self.wires[w].producer {
                    Producer::Input(_) => true,
                    Producer::BoxOut(p, _) => done[p],
                });
                if ready {
                    done[b] = true;
                    order.push(b);
                }
            }
            if order.len() == self.boxes.len() {
                return Ok(order);
            }
            if order.len() == before {
                return Err(Error::InterfaceMismatch("graph has a cycle".into()));
            }
        }
    }

    /// Boxes from which no output-interface wire is reachable. Diagnostics
    /// only; such boxes are never removed.
    pub fn unreachable_boxes(&self) -> Vec<usize> {
        let mut needed_wires = vec![false; self.wires.len()];
        for &w in &self.outputs {
            needed_wires[w] = true;
        }
        let mut needed_boxes = vec![false; self.boxes.len()];
        loop {
            let mut changed = false;
            for (b, bx) in self.boxes.iter().enumerate() {
                if !needed_boxes[b] && bx.outs.iter().any(|&w| needed_wires[w]) {
                    needed_boxes[b] = true;
                    changed = true;
                    for &w in &bx.ins {
                        needed_wires[w] = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..self.boxes.len()).filter(|&b| !needed_boxes[b]).collect()
    }

    fn consumers(&self) -> Vec<Vec<(usize, usize)>> {
        // per wire: (box, slot) pairs
        let mut out = vec![Vec::new(); self.wires.len()];
        for (b, bx) in self.boxes.iter().enumerate() {
            for (slot, &w) in bx.ins.iter().enumerate() {
                out[w].push((b, slot));
            }
        }
        out
    }

    /// Iterative refinement colors for wires and boxes: a cheap
    /// isomorphism invariant used to reject non-isomorphic graphs early and
    /// to guide the backtracking search.
    fn refine_colors(&self) -> (Vec<u64>, Vec<u64>) {
        let consumers = self.consumers();
        let out_slots: Vec<Vec<usize>> = {
            let mut v = vec![Vec::new(); self.wires.len()];
            for (j, &w) in self.outputs.iter().enumerate() {
                v[w].push(j);
            }
            v
        };
        let mut wc: Vec<u64> = self.wires.iter().map(|w| w.sort as u64).collect();
        let mut bc: Vec<u64> = self.boxes.iter().map(|b| b.op as u64).collect();
        for _ in 0..self.wires.len() + self.boxes.len() + 2 {
            let new_bc: Vec<u64> = self
                .boxes
                .iter()
                .map(|bx| {
                    let mut h = fnv1a("box") ^ (bx.op as u64).wrapping_mul(FNV_PRIME);
                    for &w in &bx.ins {
                        h = h.wrapping_mul(FNV_PRIME) ^ wc[w];
                    }
                    h = h.wrapping_mul(FNV_PRIME) ^ 0x5ead;
                    for &w in &bx.outs {
                        h = h.wrapping_mul(FNV_PRIME) ^ wc[w];
                    }
                    h
                })
                .collect();
            let new_wc: Vec<u64> = self
                .wires
                .iter()
                .enumerate()
                .map(|(w, wire)| {
                    let mut h = fnv1a("wire") ^ (wire.sort as u64).wrapping_mul(FNV_PRIME);
                    h ^= wc[w].rotate_left(17);
                    match wire.producer {
                        Producer::Input(k) => {
                            h = h.wrapping_mul(FNV_PRIME) ^ 0x1234 ^ (k as u64);
                        }
                        Producer::BoxOut(b, j) => {
                            h = h.wrapping_mul(FNV_PRIME) ^ new_bc[b] ^ (j as u64).rotate_left(32);
                        }
                    }
                    let mut cons: Vec<u64> = consumers[w]
                        .iter()
                        .map(|&(b, slot)| new_bc[b].wrapping_mul(FNV_PRIME) ^ slot as u64)
                        .collect();
                    cons.sort_unstable();
                    for c in cons {
                        h = h.wrapping_mul(FNV_PRIME) ^ c;
                    }
                    for &j in &out_slots[w] {
                        h = h.wrapping_mul(FNV_PRIME) ^ 0xfeed ^ (j as u64);
                    }
                    h
                })
                .collect();
            if new_wc == wc && new_bc == bc {
                break;
            }
            wc = new_wc;
            bc = new_bc;
        }
        (wc, bc)
    }
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

/// Backtracking isomorphism search. The wire map is entirely forced by the
/// box map (every wire has a unique producer), so the search assigns boxes
/// in topological order, constrained by the refinement colors and by the
/// already-forced wire correspondences.
fn isomorphic(
    s: &TermGraph,
    t: &TermGraph,
    sc: &(Vec<u64>, Vec<u64>),
    tc: &(Vec<u64>, Vec<u64>),
) -> bool {
    let input_wire = |g: &TermGraph, k: usize| -> WireId {
        g.wires
            .iter()
            .position(|w| w.producer == Producer::Input(k))
            .unwrap()
    };
    let mut omega: Vec<Option<WireId>> = vec![None; s.wires.len()];
    let mut omega_used: Vec<bool> = vec![false; t.wires.len()];
    let s_out_slots: Vec<Vec<usize>> = {
        let mut v = vec![Vec::new(); s.wires.len()];
        for (j, &w) in s.outputs.iter().enumerate() {
            v[w].push(j);
        }
        v
    };
    let t_out_slots: Vec<Vec<usize>> = {
        let mut v = vec![Vec::new(); t.wires.len()];
        for (j, &w) in t.outputs.iter().enumerate() {
            v[w].push(j);
        }
        v
    };
    // binding a wire pair: colors, sorts and output slots must agree
    let bind = move |omega: &mut Vec<Option<WireId>>,
                     used: &mut Vec<bool>,
                     sw: WireId,
                     tw: WireId|
          -> bool {
        if let Some(prev) = omega[sw] {
            return prev == tw;
        }
        if used[tw]
            || sc.0[sw] != tc.0[tw]
            || s.wires[sw].sort != t.wires[tw].sort
            || s_out_slots[sw] != t_out_slots[tw]
        {
            return false;
        }
        omega[sw] = Some(tw);
        used[tw] = true;
        true
    };
    for k in 0..s.inputs.len() {
        if !bind(&mut omega, &mut omega_used, input_wire(s, k), input_wire(t, k)) {
            return false;
        }
    }

    let Ok(order) = s.topo_order() else {
        return false;
    };

    #[allow(clippy::too_many_arguments)]
    fn assign(
        s: &TermGraph,
        t: &TermGraph,
        sc: &(Vec<u64>, Vec<u64>),
        tc: &(Vec<u64>, Vec<u64>),
        order: &[usize],
        depth: usize,
        beta_used: &mut Vec<bool>,
        omega: &mut Vec<Option<WireId>>,
        omega_used: &mut Vec<bool>,
        bind: &dyn Fn(&mut Vec<Option<WireId>>, &mut Vec<bool>, WireId, WireId) -> bool,
    ) -> bool {
        if depth == order.len() {
            // all boxes placed; the output interface must line up
            return s
                .outputs
                .iter()
                .zip(&t.outputs)
                .all(|(&sw, &tw)| omega[sw] == Some(tw));
        }
        let b = order[depth];
        let bx = &s.boxes[b];
        for (cand, tbx) in t.boxes.iter().enumerate() {
            if beta_used[cand] || tbx.op != bx.op || sc.1[b] != tc.1[cand] {
                continue;
            }
            // inputs of b are mapped already (topological order) and must
            // land exactly on the candidate's inputs
            if !bx
                .ins
                .iter()
                .zip(&tbx.ins)
                .all(|(&sw, &tw)| omega[sw] == Some(tw))
            {
                continue;
            }
            let omega_snapshot = omega.clone();
            let used_snapshot = omega_used.clone();
            let mut ok = true;
            for (&sw, &tw) in bx.outs.iter().zip(&tbx.outs) {
                if !bind(omega, omega_used, sw, tw) {
                    ok = false;
                    break;
                }
            }
            if ok {
                beta_used[cand] = true;
                if assign(
                    s, t, sc, tc, order, depth + 1, beta_used, omega, omega_used, bind,
                ) {
                    return true;
                }
                beta_used[cand] = false;
            }
            *omega = omega_snapshot;
            *omega_used = used_snapshot;
        }
        false
    }

    let mut beta_used = vec![false; t.boxes.len()];
    assign(
        s,
        t,
        sc,
        tc,
        &order,
        0,
        &mut beta_used,
        &mut omega,
        &mut omega_used,
        &bind,
    )
}

impl std::fmt::Display for TermGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "tg(in={:?}, out={:?}, boxes={}, wires={})",
            self.inputs,
            self.output_word(),
            self.boxes.len(),
            self.wires.len()
        )
    }
}

/// Equality in the free gs-monoidal category: interface-preserving graph
/// isomorphism, decided by refinement-guided backtracking.
pub fn tg_equal(s: &TermGraph, t: &TermGraph) -> bool {
    if s.inputs != t.inputs
        || s.output_word() != t.output_word()
        || s.wires.len() != t.wires.len()
        || s.boxes.len() != t.boxes.len()
    {
        return false;
    }
    let sc = s.refine_colors();
    let tc = t.refine_colors();
    if sorted(sc.0.clone()) != sorted(tc.0.clone()) || sorted(sc.1.clone()) != sorted(tc.1.clone())
    {
        return false;
    }
    isomorphic(s, t, &sc, &tc)
}

/// Sort and operation interpretations in a concrete model.
pub struct Assignment<C: GsCategory> {
    pub sorts: Vec<C::Obj>,
    pub ops: Vec<C::Mor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layering {
    LeastFirst,
    GreatestFirst,
}

struct Frontier<'a, C: GsCategory> {
    cat: &'a C,
    entries: Vec<(WireId, C::Obj)>,
    value: C::Mor,
}

impl<'a, C: GsCategory> Frontier<'a, C> {
    fn obj_of(&self, range: std::ops::Range<usize>) -> Option<C::Obj> {
        let mut acc: Option<C::Obj> = None;
        for (_, o) in &self.entries[range] {
            acc = Some(match acc {
                None => o.clone(),
                Some(a) => self.cat.tensor_obj(&a, o)?,
            });
        }
        acc
    }

    /// Post-composes `id_pre ⊗ m ⊗ id_post` where `m` spans
    /// `entries[start..start+len]`, then splices in the replacement wires.
    fn apply(
        &mut self,
        start: usize,
        len: usize,
        m: &C::Mor,
        replacement: Vec<(WireId, C::Obj)>,
    ) -> Result<()> {
        let err = || Error::TypeMismatch("model does not support the required tensor".into());
        let mut step = m.clone();
        if start > 0 {
            let pre = self.obj_of(0..start).ok_or_else(err)?;
            let id_pre = self.cat.identity(&pre).ok_or_else(err)?;
            step = self.cat.tensor_mor(&id_pre, &step).ok_or_else(err)?;
        }
        if start + len < self.entries.len() {
            let post = self.obj_of(start + len..self.entries.len()).ok_or_else(err)?;
            let id_post = self.cat.identity(&post).ok_or_else(err)?;
            step = self.cat.tensor_mor(&step, &id_post).ok_or_else(err)?;
        }
        self.value = self.cat.compose(&step, &self.value).ok_or_else(err)?;
        self.entries.splice(start..start + len, replacement);
        Ok(())
    }

    fn dup_at(&mut self, i: usize) -> Result<()> {
        let (w, o) = self.entries[i].clone();
        let d = self
            .cat
            .dup(&o)
            .ok_or_else(|| Error::TypeMismatch("missing duplicator".into()))?;
        self.apply(i, 1, &d, vec![(w, o.clone()), (w, o)])
    }

    fn discharge_at(&mut self, i: usize) -> Result<()> {
        let (_, o) = self.entries[i].clone();
        let b = self
            .cat
            .discharge(&o)
            .ok_or_else(|| Error::TypeMismatch("missing discharger".into()))?;
        self.apply(i, 1, &b, vec![])
    }

    fn swap_at(&mut self, i: usize) -> Result<()> {
        let (w1, o1) = self.entries[i].clone();
        let (w2, o2) = self.entries[i + 1].clone();
        let g = self
            .cat
            .symmetry(&o1, &o2)
            .ok_or_else(|| Error::TypeMismatch("missing symmetry".into()))?;
        self.apply(i, 2, &g, vec![(w2, o2), (w1, o1)])
    }

    fn move_to_end(&mut self, mut i: usize) -> Result<()> {
        while i + 1 < self.entries.len() {
            self.swap_at(i)?;
            i += 1;
        }
        Ok(())
    }

    /// Stages one consumption of `wire` at the end of the frontier,
    /// duplicating first when other consumers remain.
    fn stage(&mut self, wire: WireId, remaining_after: usize) -> Result<()> {
        let i = self
            .entries
            .iter()
            .position(|(w, _)| *w == wire)
            .ok_or_else(|| Error::InterfaceMismatch("wire not live".into()))?;
        if remaining_after > 0 {
            self.dup_at(i)?;
            self.move_to_end(i + 1)
        } else {
            self.move_to_end(i)
        }
    }
}

/// Evaluates the graph in a model: the image of the unique strict gs-monoidal
/// functor extending the assignment. Box order is the least (or, for the
/// alternative layering, greatest) ready box, so evaluation is deterministic.
pub fn tg_eval<C: GsCategory>(
    graph: &TermGraph,
    sig: &Signature,
    cat: &C,
    assignment: &Assignment<C>,
    layering: Layering,
) -> Result<C::Mor> {
    graph.validate(sig)?;
    if assignment.sorts.len() != sig.sorts.len() || assignment.ops.len() != sig.ops.len() {
        return Err(Error::TypeMismatch(
            "assignment must cover every sort and operation".into(),
        ));
    }
    let word_obj = |word: &[SortId]| -> Result<C::Obj> {
        let mut acc: Option<C::Obj> = None;
        for &s in word {
            let o = assignment.sorts[s].clone();
            acc = Some(match acc {
                None => o,
                Some(a) => cat
                    .tensor_obj(&a, &o)
                    .ok_or_else(|| Error::TypeMismatch("tensor not available".into()))?,
            });
        }
        acc.map_or_else(|| Ok(cat.unit()), Ok)
    };
    // typecheck the assignment against the signature
    for (op, decl) in sig.ops.iter().enumerate() {
        let m = &assignment.ops[op];
        if cat.mor_dom(m) != word_obj(&decl.inputs)? || cat.mor_cod(m) != word_obj(&decl.outputs)? {
            return Err(Error::TypeMismatch(format!(
                "operation {} is assigned a morphism of the wrong type",
                decl.name
            )));
        }
    }

    let mut uses = vec![0usize; graph.wires.len()];
    for bx in &graph.boxes {
        for &w in &bx.ins {
            uses[w] += 1;
        }
    }
    for &w in &graph.outputs {
        uses[w] += 1;
    }

    // frontier starts as the input wires in interface order
    let mut input_wires = vec![usize::MAX; graph.inputs.len()];
    for (w, wire) in graph.wires.iter().enumerate() {
        if let Producer::Input(k) = wire.producer {
            input_wires[k] = w;
        }
    }
    let in_obj = word_obj(&graph.inputs)?;
    let mut frontier = Frontier {
        cat,
        entries: input_wires
            .iter()
            .map(|&w| (w, assignment.sorts[graph.wires[w].sort].clone()))
            .collect(),
        value: cat
            .identity(&in_obj)
            .ok_or_else(|| Error::TypeMismatch("missing identity".into()))?,
    };

    let mut produced: Vec<bool> = graph
        .wires
        .iter()
        .map(|w| matches!(w.producer, Producer::Input(_)))
        .collect();
    let mut done = vec![false; graph.boxes.len()];
    for _ in 0..graph.boxes.len() {
        let ready = (0..graph.boxes.len()).filter(|&b| {
            !done[b] && graph.boxes[b].ins.iter().all(|&w| produced[w])
        });
        let b = match layering {
            Layering::LeastFirst => ready.min(),
            Layering::GreatestFirst => ready.max(),
        }
        .ok_or_else(|| Error::InterfaceMismatch("graph has a cycle".into()))?;
        let bx = &graph.boxes[b];
        for &w in &bx.ins {
            uses[w] -= 1;
            frontier.stage(w, uses[w])?;
        }
        let k = bx.ins.len();
        let outs: Vec<(WireId, C::Obj)> = bx
            .outs
            .iter()
            .map(|&w| (w, assignment.sorts[graph.wires[w].sort].clone()))
            .collect();
        let start = frontier.entries.len() - k;
        frontier.apply(start, k, &assignment.ops[bx.op], outs)?;
        for &w in &bx.outs {
            produced[w] = true;
        }
        done[b] = true;
    }

    // discard everything the output interface does not mention
    loop {
        let dead = frontier
            .entries
            .iter()
            .position(|(w, _)| uses[*w] == 0);
        match dead {
            Some(i) => frontier.discharge_at(i)?,
            None => break,
        }
    }
    // stage the outputs in interface order
    for &w in &graph.outputs {
        uses[w] -= 1;
        frontier.stage(w, uses[w])?;
    }
    Ok(frontier.value)
}

/// Seeded random signature: one or two sorts, a few operations of small
/// arity.
pub fn random_signature(rng: &mut ChaCha8Rng) -> Signature {
    let n_sorts = rng.gen_range(1..=2usize);
    let sorts: Vec<String> = (0..n_sorts).map(|i| format!("s{}", i)).collect();
    let n_ops = rng.gen_range(1..=3usize);
    let ops = (0..n_ops)
        .map(|i| OpDecl {
            name: format!("f{}", i),
            inputs: (0..rng.gen_range(0..=2usize))
                .map(|_| rng.gen_range(0..n_sorts))
                .collect(),
            outputs: (0..rng.gen_range(1..=2usize))
                .map(|_| rng.gen_range(0..n_sorts))
                .collect(),
        })
        .collect();
    Signature { sorts, ops }
}

/// Seeded random graph over a fixed input word: boxes consume existing wires
/// (sharing allowed), outputs are a random selection with repetition and
/// omission.
pub fn random_graph(sig: &Signature, inputs: &[SortId], rng: &mut ChaCha8Rng) -> TermGraph {
    let mut g = TermGraph::id(inputs);
    g.outputs.clear();
    let n_boxes = rng.gen_range(0..=4usize);
    for _ in 0..n_boxes {
        // pick an op whose input sorts are all available
        let available: Vec<OpId> = (0..sig.ops.len())
            .filter(|&op| {
                sig.ops[op]
                    .inputs
                    .iter()
                    .all(|&s| g.wires.iter().any(|w| w.sort == s))
            })
            .collect();
        if available.is_empty() {
            break;
        }
        let op = available[rng.gen_range(0..available.len())];
        let decl = sig.ops[op].clone();
        let b = g.boxes.len();
        let ins: Vec<WireId> = decl
            .inputs
            .iter()
            .map(|&s| {
                let candidates: Vec<WireId> = (0..g.wires.len())
                    .filter(|&w| g.wires[w].sort == s)
                    .collect();
                candidates[rng.gen_range(0..candidates.len())]
            })
            .collect();
        let outs: Vec<WireId> = decl
            .outputs
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                g.wires.push(Wire {
                    sort: s,
                    producer: Producer::BoxOut(b, j),
                });
                g.wires.len() - 1
            })
            .collect();
        g.boxes.push(BoxNode { op, ins, outs });
    }
    for w in 0..g.wires.len() {
        for _ in 0..rng.gen_range(0..=2usize) {
            if rng.gen_bool(0.4) {
                g.outputs.push(w);
            }
        }
    }
    g
}

/// Relabels wires and boxes by the given permutations; the result is
/// isomorphic to the original by construction.
pub fn relabel(g: &TermGraph, wire_perm: &[usize], box_perm: &[usize]) -> TermGraph {
    TermGraph {
        inputs: g.inputs.clone(),
        outputs: g.outputs.iter().map(|&w| wire_perm[w]).collect(),
        wires: {
            let mut wires = vec![
                Wire {
                    sort: 0,
                    producer: Producer::Input(0),
                };
                g.wires.len()
            ];
            for (w, wire) in g.wires.iter().enumerate() {
                wires[wire_perm[w]] = Wire {
                    sort: wire.sort,
                    producer: match wire.producer {
                        Producer::Input(k) => Producer::Input(k),
                        Producer::BoxOut(b, j) => Producer::BoxOut(box_perm[b], j),
                    },
                };
            }
            wires
        },
        boxes: {
            let mut boxes = vec![
                BoxNode {
                    op: 0,
                    ins: vec![],
                    outs: vec![]
                };
                g.boxes.len()
            ];
            for (b, bx) in g.boxes.iter().enumerate() {
                boxes[box_perm[b]] = BoxNode {
                    op: bx.op,
                    ins: bx.ins.iter().map(|&w| wire_perm[w]).collect(),
                    outs: bx.outs.iter().map(|&w| wire_perm[w]).collect(),
                };
            }
            boxes
        },
    }
}

/// The comonoid, multiplicativity and symmetric-monoidal laws of the free
/// gs-monoidal category, each instantiated on seeded random signatures,
/// words and graphs and decided by `tg_equal`.
pub fn check_termgraph_axioms(cases: u64, cfg: &crate::report::CheckConfig) -> crate::report::LawReport {
    use crate::report::{Outcome, Run, Witness};
    let mut run = Run::new("check_termgraph_axioms", cfg);
    let fail = |law: &str, case: u64, lhs: &TermGraph, rhs: &TermGraph| {
        Outcome::Fail(Witness {
            law: law.into(),
            location: format!("case {}", case),
            items: vec![],
            lhs: format!("{}", lhs),
            rhs: format!("{}", rhs),
        })
    };
    let eq = |law: &str, case: u64, l: &TermGraph, r: &TermGraph| {
        if tg_equal(l, r) {
            Outcome::Ok
        } else {
            fail(law, case, l, r)
        }
    };

    run.group("comonoid-axioms", &[cases], |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(c[0]).wrapping_mul(3));
        let sig = random_signature(&mut rng);
        let w: Vec<SortId> = (0..rng.gen_range(0..=3usize))
            .map(|_| rng.gen_range(0..sig.sorts.len()))
            .collect();
        let dup = TermGraph::dup(&w);
        let id = TermGraph::id(&w);
        let bang = TermGraph::discharge(&w);
        let coassoc_l = TermGraph::compose(&TermGraph::tensor(&dup, &id), &dup).unwrap();
        let coassoc_r = TermGraph::compose(&TermGraph::tensor(&id, &dup), &dup).unwrap();
        if !tg_equal(&coassoc_l, &coassoc_r) {
            return fail("comonoid-axioms", c[0], &coassoc_l, &coassoc_r);
        }
        let cocomm = TermGraph::compose(&TermGraph::symmetry(&w, &w), &dup).unwrap();
        if !tg_equal(&cocomm, &dup) {
            return fail("comonoid-axioms", c[0], &cocomm, &dup);
        }
        let counit_l = TermGraph::compose(&TermGraph::tensor(&id, &bang), &dup).unwrap();
        let counit_r = TermGraph::compose(&TermGraph::tensor(&bang, &id), &dup).unwrap();
        if !tg_equal(&counit_l, &id) {
            return fail("comonoid-axioms", c[0], &counit_l, &id);
        }
        eq("comonoid-axioms", c[0], &counit_r, &id)
    });

    run.group("monoidal-multiplicativity", &[cases], |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(c[0]).wrapping_mul(5));
        let sig = random_signature(&mut rng);
        let pick = |rng: &mut ChaCha8Rng, max: usize| -> Vec<SortId> {
            (0..rng.gen_range(0..=max))
                .map(|_| rng.gen_range(0..sig.sorts.len()))
                .collect()
        };
        let v = pick(&mut rng, 2);
        let w = pick(&mut rng, 2);
        let vw = [v.clone(), w.clone()].concat();
        let lhs = TermGraph::dup(&vw);
        let mid = TermGraph::tensor(
            &TermGraph::tensor(&TermGraph::id(&v), &TermGraph::symmetry(&v, &w)),
            &TermGraph::id(&w),
        );
        let rhs = TermGraph::compose(
            &mid,
            &TermGraph::tensor(&TermGraph::dup(&v), &TermGraph::dup(&w)),
        )
        .unwrap();
        if !tg_equal(&lhs, &rhs) {
            return fail("monoidal-multiplicativity", c[0], &lhs, &rhs);
        }
        let bang_lhs = TermGraph::discharge(&vw);
        let bang_rhs = TermGraph::tensor(&TermGraph::discharge(&v), &TermGraph::discharge(&w));
        if !tg_equal(&bang_lhs, &bang_rhs) {
            return fail("monoidal-multiplicativity", c[0], &bang_lhs, &bang_rhs);
        }
        // unit object: ∇_I and !_I are the empty identity
        let empty = TermGraph::id(&[]);
        eq("monoidal-multiplicativity", c[0], &TermGraph::dup(&[]), &empty)
    });

    run.group("smc-coherence-on-graphs", &[cases], |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(c[0]).wrapping_mul(7));
        let sig = random_signature(&mut rng);
        let word = |rng: &mut ChaCha8Rng| -> Vec<SortId> {
            (0..rng.gen_range(0..=2usize))
                .map(|_| rng.gen_range(0..sig.sorts.len()))
                .collect()
        };
        let a = word(&mut rng);
        let cw = word(&mut rng);
        let s = random_graph(&sig, &a, &mut rng);
        let t = random_graph(&sig, &cw, &mut rng);
        // γ naturality
        let lhs = TermGraph::compose(
            &TermGraph::symmetry(&s.output_word(), &t.output_word()),
            &TermGraph::tensor(&s, &t),
        )
        .unwrap();
        let rhs = TermGraph::compose(
            &TermGraph::tensor(&t, &s),
            &TermGraph::symmetry(&s.input_word().to_vec(), &t.input_word().to_vec()),
        )
        .unwrap();
        if !tg_equal(&lhs, &rhs) {
            return fail("smc-coherence-on-graphs", c[0], &lhs, &rhs);
        }
        // interchange
        let s2 = random_graph(&sig, &s.output_word(), &mut rng);
        let t2 = random_graph(&sig, &t.output_word(), &mut rng);
        let il = TermGraph::tensor(
            &TermGraph::compose(&s2, &s).unwrap(),
            &TermGraph::compose(&t2, &t).unwrap(),
        );
        let ir = TermGraph::compose(&TermGraph::tensor(&s2, &t2), &TermGraph::tensor(&s, &t))
            .unwrap();
        if !tg_equal(&il, &ir) {
            return fail("smc-coherence-on-graphs", c[0], &il, &ir);
        }
        // associativity and units of composition
        let s3 = random_graph(&sig, &s2.output_word(), &mut rng);
        let al = TermGraph::compose(&s3, &TermGraph::compose(&s2, &s).unwrap()).unwrap();
        let ar = TermGraph::compose(&TermGraph::compose(&s3, &s2).unwrap(), &s).unwrap();
        if !tg_equal(&al, &ar) {
            return fail("smc-coherence-on-graphs", c[0], &al, &ar);
        }
        let ul = TermGraph::compose(&TermGraph::id(&s.output_word()), &s).unwrap();
        eq("smc-coherence-on-graphs", c[0], &ul, &s)
    });

    run.finish()
}

fn random_rel_assignment(
    sig: &Signature,
    rng: &mut ChaCha8Rng,
) -> Assignment<crate::finrel::FinRelCat> {
    let sorts: Vec<usize> = (0..sig.sorts.len()).map(|_| rng.gen_range(1..=2usize)).collect();
    let word_size = |w: &[SortId]| w.iter().map(|&s| sorts[s]).product::<usize>();
    let ops = sig
        .ops
        .iter()
        .map(|decl| {
            let (m, n) = (word_size(&decl.inputs), word_size(&decl.outputs));
            let mask = rng.gen_range(0..(1u128 << (m * n)));
            crate::finrel::Rel::from_mask(m, n, mask)
        })
        .collect();
    Assignment { sorts, ops }
}

fn random_lifting_assignment(
    sig: &Signature,
    kl: &crate::kleisli::KleisliCat,
    rng: &mut ChaCha8Rng,
) -> Assignment<crate::kleisli::KleisliCat> {
    let sorts: Vec<usize> = (0..sig.sorts.len()).map(|_| rng.gen_range(1..=2usize)).collect();
    let word_size = |w: &[SortId]| w.iter().map(|&s| sorts[s]).product::<usize>();
    let ops = sig
        .ops
        .iter()
        .map(|decl| {
            let (m, n) = (word_size(&decl.inputs), word_size(&decl.outputs));
            let table = (0..m).map(|_| kl.monad.sample_value(n, rng)).collect();
            crate::kleisli::KleisliMorphism { src: m, tgt: n, table }
        })
        .collect();
    Assignment { sorts, ops }
}

/// Evaluation is a strict gs-monoidal functor and does not depend on the
/// chosen layering; checked on seeded random graphs into FinRel and the
/// lifting Kleisli model.
pub fn check_termgraph_eval(cases: u64, cfg: &crate::report::CheckConfig) -> crate::report::LawReport {
    use crate::report::{Outcome, Run, Witness};
    let mut run = Run::new("check_termgraph_eval", cfg);

    fn laws_for<C: GsCategory>(
        law: &'static str,
        run: &mut Run,
        cases: u64,
        cfg: &crate::report::CheckConfig,
        cat: &C,
        mk: &dyn Fn(&Signature, &mut ChaCha8Rng) -> Assignment<C>,
    ) {
        run.group(law, &[cases], |c| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                cfg.seed
                    .wrapping_add(fnv1a(law))
                    .wrapping_add(c[0].wrapping_mul(11)),
            );
            let sig = random_signature(&mut rng);
            let assignment = mk(&sig, &mut rng);
            let word: Vec<SortId> = (0..rng.gen_range(0..=2usize))
                .map(|_| rng.gen_range(0..sig.sorts.len()))
                .collect();
            let s = random_graph(&sig, &word, &mut rng);
            let t = random_graph(&sig, &s.output_word(), &mut rng);
            let ev = |g: &TermGraph, lay: Layering| tg_eval(g, &sig, cat, &assignment, lay);

            let fail = |what: &str, lhs: String, rhs: String| {
                Outcome::Fail(Witness {
                    law: law.into(),
                    location: format!("case {}: {}", c[0], what),
                    items: vec![format!("s = {}", s), format!("t = {}", t)],
                    lhs,
                    rhs,
                })
            };

            // layering invariance
            let (Ok(v_least), Ok(v_greatest)) =
                (ev(&s, Layering::LeastFirst), ev(&s, Layering::GreatestFirst))
            else {
                return Outcome::Skip;
            };
            if v_least != v_greatest {
                return fail(
                    "layering",
                    format!("{}", v_least),
                    format!("{}", v_greatest),
                );
            }

            // functoriality for composition and tensor
            let comp = TermGraph::compose(&t, &s).unwrap();
            let (Ok(vc), Ok(vs), Ok(vt)) = (
                ev(&comp, Layering::LeastFirst),
                ev(&s, Layering::LeastFirst),
                ev(&t, Layering::LeastFirst),
            ) else {
                return Outcome::Skip;
            };
            let Some(direct) = cat.compose(&vt, &vs) else {
                return Outcome::Skip;
            };
            if vc != direct {
                return fail("compose", format!("{}", vc), format!("{}", direct));
            }
            let tens = TermGraph::tensor(&s, &t);
            let (Ok(vx), Some(direct)) = (
                ev(&tens, Layering::LeastFirst),
                cat.tensor_mor(&vs, &vt),
            ) else {
                return Outcome::Skip;
            };
            if vx != direct {
                return fail("tensor", format!("{}", vx), format!("{}", direct));
            }

            // structure arrows evaluate to the model's structure
            let obj = {
                let mut acc: Option<C::Obj> = None;
                for &srt in &word {
                    let o = assignment.sorts[srt].clone();
                    acc = Some(match acc {
                        None => o,
                        Some(a) => match cat.tensor_obj(&a, &o) {
                            Some(x) => x,
                            None => return Outcome::Skip,
                        },
                    });
                }
                acc.unwrap_or_else(|| cat.unit())
            };
            let (Ok(vd), Some(md)) = (ev(&TermGraph::dup(&word), Layering::LeastFirst), cat.dup(&obj))
            else {
                return Outcome::Skip;
            };
            if vd != md {
                return fail("dup", format!("{}", vd), format!("{}", md));
            }
            let (Ok(vb), Some(mb)) = (
                ev(&TermGraph::discharge(&word), Layering::LeastFirst),
                cat.discharge(&obj),
            ) else {
                return Outcome::Skip;
            };
            if vb != mb {
                return fail("discharge", format!("{}", vb), format!("{}", mb));
            }
            Outcome::Ok
        });
    }

    let finrel = crate::finrel::FinRelCat::new(vec![1, 2]);
    laws_for(
        "eval-into-finrel",
        &mut run,
        cases,
        cfg,
        &finrel,
        &random_rel_assignment,
    );
    let lifting = crate::kleisli::KleisliCat::new(crate::monad::MonadSpec::lifting(), vec![1, 2]);
    laws_for(
        "eval-into-lifting-kleisli",
        &mut run,
        cases,
        cfg,
        &lifting,
        &|sig, rng| random_lifting_assignment(sig, &lifting, rng),
    );

    run.finish()
}

/// Signature fixture with names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignatureFixture {
    pub sorts: Vec<String>,
    pub ops: Vec<OpFixture>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpFixture {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl SignatureFixture {
    pub fn to_signature(&self) -> Result<Signature> {
        let sorts = self.sorts.clone();
        let sort_id = |n: &str| {
            sorts
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::SortMismatch(format!("unknown sort {}", n)))
        };
        let ops = self
            .ops
            .iter()
            .map(|o| {
                Ok(OpDecl {
                    name: o.name.clone(),
                    inputs: o.inputs.iter().map(|s| sort_id(s)).collect::<Result<_>>()?,
                    outputs: o.outputs.iter().map(|s| sort_id(s)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Signature { sorts, ops })
    }
}

/// Graph fixture: wires with producers, boxes by op name, outputs by wire id.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFixture {
    pub inputs: Vec<String>,
    pub outputs: Vec<usize>,
    pub wires: Vec<WireFixture>,
    pub boxes: Vec<BoxFixture>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireFixture {
    pub sort: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_box: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxFixture {
    pub op: String,
    pub ins: Vec<usize>,
    pub outs: Vec<usize>,
}

impl GraphFixture {
    pub fn to_graph(&self, sig: &Signature) -> Result<TermGraph> {
        let sort_id = |n: &str| {
            sig.sort_id(n)
                .ok_or_else(|| Error::SortMismatch(format!("unknown sort {}", n)))
        };
        let g = TermGraph {
            inputs: self
                .inputs
                .iter()
                .map(|s| sort_id(s))
                .collect::<Result<_>>()?,
            outputs: self.outputs.clone(),
            wires: self
                .wires
                .iter()
                .map(|w| {
                    let producer = match (w.input, w.from_box) {
                        (Some(k), None) => Producer::Input(k),
                        (None, Some((b, j))) => Producer::BoxOut(b, j),
                        _ => {
                            return Err(Error::InterfaceMismatch(
                                "wire needs exactly one producer".into(),
                            ))
                        }
                    };
                    Ok(Wire {
                        sort: sort_id(&w.sort)?,
                        producer,
                    })
                })
                .collect::<Result<_>>()?,
            boxes: self
                .boxes
                .iter()
                .map(|b| {
                    Ok(BoxNode {
                        op: sig
                            .op_id(&b.op)
                            .ok_or_else(|| Error::InterfaceMismatch(format!("unknown op {}", b.op)))?,
                        ins: b.ins.clone(),
                        outs: b.outs.clone(),
                    })
                })
                .collect::<Result<_>>()?,
        };
        g.validate(sig)?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::{FinRelCat, Rel};

    fn sig1() -> Signature {
        Signature {
            sorts: vec!["s".into()],
            ops: vec![OpDecl {
                name: "f".into(),
                inputs: vec![0],
                outputs: vec![0],
            }],
        }
    }

    #[test]
    fn compose_with_identity_is_isomorphic() {
        let sig = sig1();
        let f = TermGraph::from_op(&sig, 0);
        let left = TermGraph::compose(&f, &TermGraph::id(&[0])).unwrap();
        let right = TermGraph::compose(&TermGraph::id(&[0]), &f).unwrap();
        assert!(tg_equal(&left, &f));
        assert!(tg_equal(&right, &f));
    }

    #[test]
    fn discharge_keeps_the_box() {
        let sig = sig1();
        let f = TermGraph::from_op(&sig, 0);
        let discarded = TermGraph::compose(&TermGraph::discharge(&[0]), &f).unwrap();
        assert_eq!(discarded.box_count(), 1);
        assert_eq!(discarded.output_word(), Vec::<usize>::new());
        assert_eq!(discarded.unreachable_boxes(), vec![0]);
        // and it is not isomorphic to the plain discharger
        assert!(!tg_equal(&discarded, &TermGraph::discharge(&[0])));
    }

    #[test]
    fn sharing_differs_from_copying() {
        let sig = sig1();
        let f = TermGraph::from_op(&sig, 0);
        let shared = TermGraph::compose(&TermGraph::dup(&[0]), &f).unwrap();
        let copied =
            TermGraph::compose(&TermGraph::tensor(&f, &f), &TermGraph::dup(&[0])).unwrap();
        assert_eq!(shared.box_count(), 1);
        assert_eq!(copied.box_count(), 2);
        assert!(!tg_equal(&shared, &copied));
    }

    #[test]
    fn coassociativity_canonicalizes_to_triple_consumption() {
        let w = [0usize];
        let dup = TermGraph::dup(&w);
        let id = TermGraph::id(&w);
        let lhs = TermGraph::compose(&TermGraph::tensor(&dup, &id), &dup).unwrap();
        let rhs = TermGraph::compose(&TermGraph::tensor(&id, &dup), &dup).unwrap();
        assert!(tg_equal(&lhs, &rhs));
    }

    #[test]
    fn relabeling_preserves_equality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let sig = random_signature(&mut rng);
            let word: Vec<SortId> = (0..rng.gen_range(0..=2usize))
                .map(|_| rng.gen_range(0..sig.sorts.len()))
                .collect();
            let g = random_graph(&sig, &word, &mut rng);
            g.validate(&sig).unwrap();
            // random permutations
            let mut wp: Vec<usize> = (0..g.wire_count()).collect();
            let mut bp: Vec<usize> = (0..g.box_count()).collect();
            for i in (1..wp.len()).rev() {
                wp.swap(i, rng.gen_range(0..=i));
            }
            for i in (1..bp.len()).rev() {
                bp.swap(i, rng.gen_range(0..=i));
            }
            let h = relabel(&g, &wp, &bp);
            h.validate(&sig).unwrap();
            assert!(tg_equal(&g, &h));
        }
    }

    #[test]
    fn eval_of_structure_arrows_matches_model() {
        let sig = sig1();
        let cat = FinRelCat::new(vec![1, 2]);
        let assignment = Assignment {
            sorts: vec![2usize],
            ops: vec![Rel::from_mask(2, 2, 0b0110)],
        };
        let e = |g: &TermGraph| tg_eval(g, &sig, &cat, &assignment, Layering::LeastFirst).unwrap();
        assert_eq!(e(&TermGraph::id(&[0])), Rel::identity(2));
        assert_eq!(e(&TermGraph::dup(&[0])), Rel::dup(2));
        assert_eq!(e(&TermGraph::discharge(&[0])), Rel::discharge(2));
        assert_eq!(e(&TermGraph::symmetry(&[0], &[0])), Rel::symmetry(2, 2));
        assert_eq!(e(&TermGraph::from_op(&sig, 0)), Rel::from_mask(2, 2, 0b0110));
    }

    #[test]
    fn shared_subterm_evaluates_like_dup_after_f() {
        let sig = sig1();
        let cat = FinRelCat::new(vec![1, 2]);
        let shared = TermGraph::compose(&TermGraph::dup(&[0]), &TermGraph::from_op(&sig, 0)).unwrap();
        let f = TermGraph::from_op(&sig, 0);
        let copied =
            TermGraph::compose(&TermGraph::tensor(&f, &f), &TermGraph::dup(&[0])).unwrap();
        for mask in 0..16u128 {
            let r = Rel::from_mask(2, 2, mask);
            let assignment = Assignment {
                sorts: vec![2usize],
                ops: vec![r.clone()],
            };
            let vs = tg_eval(&shared, &sig, &cat, &assignment, Layering::LeastFirst).unwrap();
            let vc = tg_eval(&copied, &sig, &cat, &assignment, Layering::LeastFirst).unwrap();
            let expect_s = Rel::compose(&Rel::dup(2), &r).unwrap();
            let expect_c = Rel::compose(&Rel::tensor(&r, &r), &Rel::dup(2)).unwrap();
            assert_eq!(vs, expect_s);
            assert_eq!(vc, expect_c);
            assert_eq!(vs == vc, r.is_partial_function());
        }
    }

    #[test]
    fn type_mismatch_is_rejected() {
        let sig = sig1();
        let cat = FinRelCat::new(vec![1, 2]);
        let assignment = Assignment {
            sorts: vec![2usize],
            ops: vec![Rel::from_mask(2, 4, 0)],
        };
        assert!(matches!(
            tg_eval(
                &TermGraph::from_op(&sig, 0),
                &sig,
                &cat,
                &assignment,
                Layering::LeastFirst
            ),
            Err(Error::TypeMismatch(_))
        ));
    }
}

#[cfg(test)]
mod suite_tests {
    use super::*;
    use crate::report::CheckConfig;

    #[test]
    fn axiom_suite_small() {
        let rep = check_termgraph_axioms(60, &CheckConfig::default());
        assert!(rep.passed(), "{}", rep);
    }

    #[test]
    fn eval_suite_small() {
        let rep = check_termgraph_eval(40, &CheckConfig::default());
        assert!(rep.passed(), "{}", rep);
    }
}
