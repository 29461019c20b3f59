use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ArrowIx, LocallyGentleQuiver, Quiver, VertexIx};

/// Deterministic random locally gentle quiver on vertices `1..=n_vertices`.
///
/// Arrows (loops included) are added while the degree bound allows, up to
/// `max_arrows`. Then at each vertex the composable in/out pairs are split into
/// relations and non-relations, uniformly among the splits that keep every
/// continuation unique.
pub fn random_locally_gentle(n_vertices: usize, max_arrows: usize, seed: u64) -> LocallyGentleQuiver {
    assert!(n_vertices >= 1, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = Quiver::new();
    for v in 1..=n_vertices {
        q.add_vertex(&v.to_string()).expect("fresh vertex");
    }
    let mut out_deg = vec![0usize; n_vertices];
    let mut in_deg = vec![0usize; n_vertices];
    for k in 1..=max_arrows {
        let sources: Vec<usize> = (0..n_vertices).filter(|&v| out_deg[v] < 2).collect();
        let targets: Vec<usize> = (0..n_vertices).filter(|&v| in_deg[v] < 2).collect();
        let (Some(&s), Some(&t)) = (sources.choose(&mut rng), targets.choose(&mut rng)) else {
            break;
        };
        out_deg[s] += 1;
        in_deg[t] += 1;
        q.add_arrow(&format!("a{k}"), VertexIx(s), VertexIx(t)).expect("fresh arrow");
    }
    for v in q.vertex_ids().collect::<Vec<_>>() {
        let ins: Vec<ArrowIx> = q.in_arrows(v).collect();
        let outs: Vec<ArrowIx> = q.out_arrows(v).collect();
        let pairs: Vec<(ArrowIx, ArrowIx)> = ins
            .iter()
            .flat_map(|&c| outs.iter().map(move |&b| (c, b)))
            .collect();
        let admissible: Vec<u32> = (0u32..1 << pairs.len())
            .filter(|&mask| split_is_gentle(&pairs, mask, &ins, &outs))
            .collect();
        let mask = admissible[rng.gen_range(0..admissible.len())];
        for (k, &(c, b)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                q.add_relation(c, b).expect("composable by construction");
            }
        }
    }
    q.validate().expect("generator preserves the axioms")
}

fn split_is_gentle(pairs: &[(ArrowIx, ArrowIx)], mask: u32, ins: &[ArrowIx], outs: &[ArrowIx]) -> bool {
    let count = |pred: &dyn Fn(ArrowIx, ArrowIx) -> bool, related: bool| {
        pairs
            .iter()
            .enumerate()
            .filter(|&(k, &(c, b))| pred(c, b) && ((mask >> k) & 1 == 1) == related)
            .count()
    };
    [true, false].into_iter().all(|related| {
        ins.iter().all(|&x| count(&|c, _| c == x, related) <= 1)
            && outs.iter().all(|&x| count(&|_, b| b == x, related) <= 1)
    })
}
