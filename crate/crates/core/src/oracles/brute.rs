//! Full-enumeration oracles. None of these share code with the search engine.

use rand::Rng;

use super::Cnf3Formula;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::labeling::{ListAssignment, Labeling};

pub const SAT_VAR_CAP: usize = 24;
pub const LIST_PRODUCT_CAP: u128 = 10_000_000;
pub const LABELING_CAP: u128 = 50_000_000;

/// Neighbor sums for a dense label vector.
fn sums(g: &Graph, labels: &[u64]) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().map(|&w| labels[w]).sum()).collect()
}

fn additive(g: &Graph, labels: &[u64]) -> bool {
    let s = sums(g, labels);
    g.edges().iter().all(|&(u, v)| s[u] != s[v])
}

/// Calls `f` on every vector in `{0..base}^n` in lexicographic order of the
/// reversed vector; stops early when `f` returns false.
fn odometer(n: usize, base: u64, mut f: impl FnMut(&[u64]) -> bool) {
    let mut x = vec![0u64; n];
    loop {
        if !f(&x) {
            return;
        }
        let mut i = 0;
        while i < n {
            x[i] += 1;
            if x[i] < base {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == n {
            return;
        }
    }
}

fn check_cap(base: u64, n: usize, cap: u128, what: &str) -> Result<()> {
    let size = (base as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded(format!("{what}: {base}^{n} exceeds {cap}")));
    }
    Ok(())
}

/// Some satisfying assignment, or `None` after trying all 2^n.
pub fn sat_brute(phi: &Cnf3Formula) -> Result<Option<Vec<bool>>> {
    if phi.num_vars() > SAT_VAR_CAP {
        return Err(Error::CapExceeded(format!("{} variables exceed {SAT_VAR_CAP}", phi.num_vars())));
    }
    let mut found = None;
    odometer(phi.num_vars(), 2, |x| {
        let a: Vec<bool> = x.iter().map(|&b| b == 1).collect();
        if phi.is_satisfied_by(&a) {
            found = Some(a);
            return false;
        }
        true
    });
    Ok(found)
}

/// A proper coloring with c(v) ∈ L(v), or `None` after the full product.
pub fn list_color_brute(g: &Graph, lists: &ListAssignment) -> Result<Option<Vec<u64>>> {
    lists.validate_total(g)?;
    let choices: Vec<Vec<u64>> = (0..g.n()).map(|v| lists.get(v).expect("total").iter().copied().collect()).collect();
    let product = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if product > LIST_PRODUCT_CAP {
        return Err(Error::CapExceeded(format!("list product {product} exceeds {LIST_PRODUCT_CAP}")));
    }
    let n = g.n();
    let mut idx = vec![0usize; n];
    loop {
        let c: Vec<u64> = (0..n).map(|v| choices[v][idx[v]]).collect();
        if g.edges().iter().all(|&(u, v)| c[u] != c[v]) {
            return Ok(Some(c));
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(None);
        }
    }
}

/// η by trying every labeling in {1..k}^n for k = 1, 2, ….
pub fn eta_brute(g: &Graph) -> Result<(u64, Labeling)> {
    let n = g.n();
    for k in 1..=n.max(1) as u64 + 1 {
        check_cap(k, n, LABELING_CAP, "eta oracle")?;
        let mut hit = None;
        odometer(n, k, |x| {
            let l: Vec<u64> = x.iter().map(|&a| a + 1).collect();
            if additive(g, &l) {
                hit = Some(l);
                return false;
            }
            true
        });
        if let Some(l) = hit {
            return Ok((k, Labeling::from_vec(&l)));
        }
    }
    Err(Error::CapExceeded("eta oracle found no labeling with k <= n+1".into()))
}

/// Minimum weight over all 2^n binary labelings; `None` when none is additive.
pub fn eta1_brute(g: &Graph) -> Result<Option<(u64, Labeling)>> {
    check_cap(2, g.n(), LABELING_CAP, "eta1 oracle")?;
    let mut best: Option<(u64, Vec<u64>)> = None;
    odometer(g.n(), 2, |x| {
        let w: u64 = x.iter().sum();
        if best.as_ref().is_none_or(|b| w < b.0) && additive(g, x) {
            best = Some((w, x.to_vec()));
        }
        true
    });
    Ok(best.map(|(w, l)| (w, Labeling::from_vec(&l))))
}

/// Smallest proper total dominating set over all 2^n subsets.
pub fn ptds_brute(g: &Graph) -> Result<Option<Vec<Vertex>>> {
    check_cap(2, g.n(), LABELING_CAP, "ptds oracle")?;
    let mut best: Option<Vec<u64>> = None;
    odometer(g.n(), 2, |x| {
        let size: u64 = x.iter().sum();
        if best.as_ref().is_some_and(|b| b.iter().sum::<u64>() <= size) {
            return true;
        }
        let s = sums(g, x);
        if s.iter().all(|&c| c >= 1) && g.edges().iter().all(|&(u, v)| s[u] != s[v]) {
            best = Some(x.to_vec());
        }
        true
    });
    Ok(best.map(|b| (0..g.n()).filter(|&v| b[v] == 1).collect()))
}

/// σ by enumerating every labeling in {1..|E|+1}^n. Labels beyond |E|+1 are
/// never needed: given any class structure, class values can be chosen one
/// at a time, each edge excluding at most one value.
pub fn sigma_brute(g: &Graph) -> Result<(u64, Labeling)> {
    let base = g.edge_count() as u64 + 1;
    check_cap(base, g.n(), LABELING_CAP, "sigma oracle")?;
    let mut best: Option<(usize, Vec<u64>)> = None;
    odometer(g.n(), base, |x| {
        let mut distinct = x.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if best.as_ref().is_none_or(|b| distinct.len() < b.0) {
            let l: Vec<u64> = x.iter().map(|&a| a + 1).collect();
            if additive(g, &l) {
                best = Some((distinct.len(), l));
            }
        }
        best.as_ref().is_none_or(|b| b.0 > 1)
    });
    let (m, l) = best.expect("all-distinct labelings are additive");
    Ok((m as u64, Labeling::from_vec(&l)))
}

/// G(n, p) with `n` vertices.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid pairs")
}

/// Nonempty random sublists of `palette` for each of `n` vertices.
pub fn random_lists<R: Rng>(rng: &mut R, n: usize, palette: &[u64]) -> ListAssignment {
    let mut out = ListAssignment::new();
    for v in 0..n {
        let mut list: Vec<u64> = palette.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if list.is_empty() {
            list.push(palette[rng.gen_range(0..palette.len())]);
        }
        out.insert(v, list);
    }
    out
}
