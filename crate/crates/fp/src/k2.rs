//! `K_2(Φ, R)` as the fiber of `φ` over the identity, with an exhaustive
//! centrality check.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;
use steinberg_core::chevalley::unipotent;
use steinberg_core::roots::RootDatum;
use steinberg_core::{Elem, Error, RMatrix, Result, Ring};

use crate::exact::StTable;
use crate::todd_coxeter::{CosetTable, EnumerationCaps};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonCentralPair {
    pub kernel_coset: usize,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub system: String,
    pub ring: String,
    pub st_order: u64,
    pub image_order: u64,
    pub kernel_order: u64,
    pub kernel_cosets: Vec<usize>,
    pub central: bool,
    pub witnesses: Vec<NonCentralPair>,
}

impl KernelReport {
    pub fn factorizes(&self) -> bool {
        self.st_order == self.kernel_order * self.image_order
    }
}

pub fn k2_compute(system: &Arc<RootDatum>, ring: &Ring, caps: EnumerationCaps) -> Result<KernelReport> {
    if ring.is_zero_ring() {
        return Ok(KernelReport {
            system: system.name(),
            ring: ring.spec().to_string(),
            st_order: 1,
            image_order: 1,
            kernel_order: 1,
            kernel_cosets: vec![0],
            central: true,
            witnesses: Vec::new(),
        });
    }
    kernel_report(&StTable::enumerate(system, ring, caps)?)
}

pub fn kernel_report(st: &StTable) -> Result<KernelReport> {
    let p = &st.presentation;
    let t = &st.table;
    let system = &p.system;
    let ring = &p.ring;
    if system.matrix_size().is_none() {
        return Err(Error::Unsupported(format!("φ is not available for {}", system.name())));
    }
    let gen_mats: Vec<RMatrix> = p
        .generators
        .iter()
        .map(|(root, c)| unipotent(system, ring, *root, c))
        .collect::<Result<_>>()?;
    let tree = t.spanning_tree();
    let order = bfs_order(t, &tree);
    let mut mats: Vec<Option<RMatrix>> = vec![None; t.len()];
    let n = system.matrix_size().expect("checked");
    mats[0] = Some(RMatrix::identity(ring, n));
    for &c in &order[1..] {
        let (parent, x) = tree[c];
        let m = mats[parent as usize].as_ref().expect("bfs order").mul(&gen_mats[x])?;
        mats[c] = Some(m);
    }
    let mut images: HashSet<Vec<Elem>> = HashSet::new();
    let mut kernel = Vec::new();
    for (c, m) in mats.into_iter().enumerate() {
        let m = m.expect("every coset reached");
        if m.is_identity() {
            kernel.push(c);
        }
        images.insert(m.entries);
    }
    let mut witnesses = Vec::new();
    for &k in &kernel {
        let g = CosetTable::representative(&tree, k);
        for x in 0..t.num_columns() {
            let gs = t.image(k, x);
            let sg = t.trace(t.image(0, x), &g);
            if gs != sg {
                witnesses.push(NonCentralPair {
                    kernel_coset: k,
                    generator: p.presentation.names[x].clone(),
                });
            }
        }
    }
    Ok(KernelReport {
        system: system.name(),
        ring: ring.spec().to_string(),
        st_order: t.len() as u64,
        image_order: images.len() as u64,
        kernel_order: kernel.len() as u64,
        kernel_cosets: kernel,
        central: witnesses.is_empty(),
        witnesses,
    })
}

fn bfs_order(t: &CosetTable, tree: &[(u32, usize)]) -> Vec<usize> {
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); t.len()];
    for (c, &(p, _)) in tree.iter().enumerate().skip(1) {
        children[p as usize].push(c);
    }
    let mut order = vec![0];
    let mut k = 0;
    while k < order.len() {
        order.extend(children[order[k]].iter().copied());
        k += 1;
    }
    order
}
