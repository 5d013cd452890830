use rand::seq::IndexedRandom;
use rand::Rng;

use super::ops::{degree3_vertices, edge_join_sites, spoke_sites, Matching};
use super::recipe::{Recipe, RecipeBuilder, Replay};
use crate::connectivity::is_regular;
use crate::error::Result;
use crate::generators::complete_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Spoke,
    Join,
    NewBase,
    Bridge,
    Stop,
}

/// Builds a random recipe from K4 bases whose result has at most `max_n`
/// vertices (`max_n >= 4`).
///
/// At every point the generator lists the moves that are currently legal and
/// keep the final size within `max_n` (spoke or edge join on the newest
/// slot, opening another K4, bridging two live slots, stopping when one slot
/// is left), picks one uniformly, then picks its parameters uniformly.
pub fn random_recipe<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> Result<(Replay, Recipe)> {
    let k4 = complete_graph(4)?;
    let mut b = RecipeBuilder::trusted();
    b.base(k4.clone())?;
    loop {
        let live = b.live_slots();
        let proj = b.projected_vertices();
        let last = b.graph(b.last_slot().unwrap()).unwrap().clone();
        let spokes = spoke_sites(&last);

        let mut moves = Vec::with_capacity(5);
        if proj < max_n && !spokes.is_empty() {
            moves.push(Move::Spoke);
        }
        if proj + 2 <= max_n {
            if is_regular(&last, 3) {
                moves.push(Move::Join);
            }
            moves.push(Move::NewBase);
        }
        if live.len() >= 2 {
            moves.push(Move::Bridge);
        } else {
            moves.push(Move::Stop);
        }

        match *moves.choose(rng).unwrap() {
            Move::Spoke => {
                let &(v, w, x) = spokes.choose(rng).unwrap();
                b.spoke(v, w, x)?;
            }
            Move::Join => {
                let sites = edge_join_sites(&last);
                let &(mut st, mut vw) = sites.choose(rng).unwrap();
                if rng.random_bool(0.5) {
                    std::mem::swap(&mut st, &mut vw);
                }
                b.edge_join(st, vw)?;
            }
            Move::NewBase => {
                b.base(k4.clone())?;
            }
            Move::Bridge => {
                let pair: Vec<usize> = live.choose_multiple(rng, 2).copied().collect();
                let (l, r) = (pair[0], pair[1]);
                let v1 = *degree3_vertices(b.graph(l).unwrap()).choose(rng).unwrap();
                let v2 = *degree3_vertices(b.graph(r).unwrap()).choose(rng).unwrap();
                let m = *Matching::all().choose(rng).unwrap();
                b.bridge(l, v1, r, v2, m)?;
            }
            Move::Stop => break,
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::recipe::replay;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_per_seed() {
        let a = random_recipe(&mut ChaCha8Rng::seed_from_u64(3), 12).unwrap().1;
        let b = random_recipe(&mut ChaCha8Rng::seed_from_u64(3), 12).unwrap().1;
        assert_eq!(a, b);
    }

    #[test]
    fn respects_size_and_replays() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let (rep, recipe) = random_recipe(&mut rng, 10).unwrap();
            assert!(rep.graph.n() <= 10);
            assert_eq!(replay(&recipe).unwrap().graph, rep.graph);
        }
    }
}
