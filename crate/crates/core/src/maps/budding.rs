use std::collections::{BTreeMap, BTreeSet};

use super::code::MCatalanCode;
use crate::arrangement::RationalPoint;
use crate::error::{Error, Result};
use crate::tree::{DecoratedTree, Node, VertexRef};

/// A tree under construction: placed nodes plus the set of buds. Buds are
/// kept in tree order, so the first bud is the set minimum.
struct Budding {
    m: usize,
    nodes: BTreeMap<VertexRef, (Vec<usize>, bool)>,
    buds: BTreeSet<VertexRef>,
}

impl Budding {
    fn first_bud(&mut self, site: usize) -> Result<VertexRef> {
        self.buds
            .pop_first()
            .ok_or_else(|| Error::NonRealizable(format!("no bud left at site {site}")))
    }

    fn close(&mut self, site: usize) -> Result<()> {
        self.first_bud(site).map(|_| ())
    }

    fn open(&mut self, site: usize, labels: Vec<usize>, captive: bool) -> Result<()> {
        let at = self.first_bud(site)?;
        for r in 0..=self.m {
            self.buds.insert(at.child(r));
        }
        self.nodes.insert(at, (labels, captive));
        Ok(())
    }

    fn build(&self, at: &VertexRef) -> Option<Node> {
        let (labels, captive) = self.nodes.get(at)?;
        Some(Node {
            labels: labels.clone(),
            captive: *captive,
            children: (0..=self.m).map(|r| self.build(&at.child(r))).collect(),
        })
    }
}

/// Rebuilds the decorated tree of a realizable code. Failures of the
/// construction are reported as [`Error::NonRealizable`].
pub fn code_to_tree(code: &MCatalanCode) -> Result<DecoratedTree> {
    let mut r = Budding {
        m: code.m(),
        nodes: BTreeMap::new(),
        buds: BTreeSet::from([VertexRef::root()]),
    };
    let dashed = code.dashed_union();
    for site in 1..=code.sites() {
        match code.site_type(site) {
            0 => {
                let labels = code.preimage(0, site);
                let captive = labels.iter().all(|k| dashed.contains(k));
                r.open(site, labels, captive)?;
            }
            _ => r.close(site)?,
        }
    }
    r.close(code.sites() + 1)?;
    if !r.buds.is_empty() {
        return Err(Error::NonRealizable(format!(
            "{} buds left after the last site",
            r.buds.len()
        )));
    }
    let root = r
        .build(&VertexRef::root())
        .ok_or_else(|| Error::NonRealizable("no node was opened".into()))?;
    DecoratedTree::new(code.m(), root).map_err(|e| Error::NonRealizable(e.to_string()))
}

/// The tree whose face contains `p`.
pub fn point_to_tree(p: &RationalPoint, m: usize) -> Result<DecoratedTree> {
    code_to_tree(&MCatalanCode::of_point(p, m)?)
}
