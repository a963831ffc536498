//! Rational (cyclic) terms: a finite equation system where every node is a
//! single layer whose subterm positions reference other nodes.

use std::collections::BTreeMap;

use crate::atoms::{AtomSet, Perm};
use crate::error::{Error, Result};
use crate::infinite::Layer;
use crate::signature::{Arg, RawTerm};

/// A finite system of layer equations. Node `i` unfolds to `layers[i]`.
#[derive(Debug)]
pub struct RationalSystem {
    layers: Vec<Layer<usize>>,
    labels: Vec<Option<String>>,
    fv: Vec<AtomSet>,
}

impl RationalSystem {
    pub fn new(layers: Vec<Layer<usize>>, labels: Vec<Option<String>>) -> Result<RationalSystem> {
        assert_eq!(layers.len(), labels.len());
        for layer in &layers {
            if let Layer::Op(_, args) = layer {
                for a in args {
                    if a.term >= layers.len() {
                        return Err(Error::Parse {
                            pos: 0,
                            msg: format!("rational system references missing node {}", a.term),
                        });
                    }
                }
            }
        }
        let fv = compute_fv(&layers);
        Ok(RationalSystem { layers, labels, fv })
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer(&self, i: usize) -> &Layer<usize> {
        &self.layers[i]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    /// Exact free variables of node `i`, from the least fixpoint over the
    /// equation graph.
    pub fn fv(&self, i: usize) -> &AtomSet {
        &self.fv[i]
    }

    /// Applies a permutation to every atom in the system. Free-variable sets
    /// move pointwise, no fixpoint recomputation needed.
    pub fn act(&self, p: &Perm) -> RationalSystem {
        let layers = self
            .layers
            .iter()
            .map(|layer| match layer {
                Layer::Var(a) => Layer::Var(p.apply(*a)),
                Layer::Op(f, args) => Layer::Op(
                    f.clone(),
                    args.iter()
                        .map(|a| {
                            Arg::new(a.binders.iter().map(|b| p.apply(*b)).collect(), a.term)
                        })
                        .collect(),
                ),
            })
            .collect();
        let fv = self
            .fv
            .iter()
            .map(|s| s.iter().map(|a| p.apply(*a)).collect())
            .collect();
        RationalSystem {
            layers,
            labels: self.labels.clone(),
            fv,
        }
    }
}

fn compute_fv(layers: &[Layer<usize>]) -> Vec<AtomSet> {
    let mut fv: Vec<AtomSet> = vec![AtomSet::new(); layers.len()];
    loop {
        let mut changed = false;
        for (i, layer) in layers.iter().enumerate() {
            let mut next = AtomSet::new();
            match layer {
                Layer::Var(a) => {
                    next.insert(*a);
                }
                Layer::Op(_, args) => {
                    for a in args {
                        let mut sub = fv[a.term].clone();
                        for b in &a.binders {
                            sub.remove(b);
                        }
                        next.extend(sub);
                    }
                }
            }
            if next != fv[i] {
                fv[i] = next;
                changed = true;
            }
        }
        if !changed {
            return fv;
        }
    }
}

/// Incremental construction of a [`RationalSystem`], with forward references
/// through reserved nodes.
#[derive(Default)]
pub struct RationalBuilder {
    layers: Vec<Option<Layer<usize>>>,
    labels: Vec<Option<String>>,
    by_label: BTreeMap<String, usize>,
}

impl RationalBuilder {
    pub fn new() -> RationalBuilder {
        RationalBuilder::default()
    }

    /// Reserves a node to be filled later, optionally under a label.
    pub fn reserve(&mut self, label: Option<&str>) -> usize {
        let id = self.layers.len();
        self.layers.push(None);
        self.labels.push(label.map(str::to_string));
        if let Some(l) = label {
            self.by_label.insert(l.to_string(), id);
        }
        id
    }

    pub fn fill(&mut self, id: usize, layer: Layer<usize>) {
        assert!(self.layers[id].is_none(), "node {id} filled twice");
        self.layers[id] = Some(layer);
    }

    pub fn push(&mut self, layer: Layer<usize>) -> usize {
        let id = self.reserve(None);
        self.fill(id, layer);
        id
    }

    pub fn lookup(&self, label: &str) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// The layer already stored at a node, if it has been filled.
    pub fn layer_of(&self, id: usize) -> Option<&Layer<usize>> {
        self.layers[id].as_ref()
    }

    /// Flattens a finite raw term into system nodes, returning its root id.
    pub fn push_raw(&mut self, t: &RawTerm) -> usize {
        match t {
            RawTerm::Var(a) => self.push(Layer::Var(*a)),
            RawTerm::Op(f, args) => {
                let args = args
                    .iter()
                    .map(|a| Arg::new(a.binders.clone(), self.push_raw(&a.term)))
                    .collect();
                self.push(Layer::Op(f.clone(), args))
            }
        }
    }

    pub fn build(self) -> Result<RationalSystem> {
        let mut layers = Vec::with_capacity(self.layers.len());
        for (i, l) in self.layers.into_iter().enumerate() {
            match l {
                Some(l) => layers.push(l),
                None => {
                    let name = self.labels[i].clone().unwrap_or_else(|| format!("#{i}"));
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("rational system label `{name}` never defined"),
                    });
                }
            }
        }
        RationalSystem::new(layers, self.labels)
    }
}
