//! Small named quivers with known Cartan data, used as fixtures.

use crate::quiver::{parse_quiver, LocallyGentleQuiver, WeightFunction};

/// One vertex, one loop `e` with `e*e = 0`, weight `q`.
pub const GENTLE_LOOP: &str = "\
vertex v
arrow e v -> v
rel e e
weight e q
";

/// One vertex, one loop `e` without relations, weight `q`.
pub const FREE_LOOP: &str = "\
vertex v
arrow e v -> v
weight e q
";

/// Two parallel 3-cycles `a1 a2 a3` and `b1 b2 b3` over vertices 1, 2, 3, each
/// with full relations; every arrow has weight `q`.
pub const TWO_TRIANGLES: &str = "\
vertex 1
vertex 2
vertex 3
arrow a1 1 -> 2
arrow a2 2 -> 3
arrow a3 3 -> 1
arrow b1 1 -> 2
arrow b2 2 -> 3
arrow b3 3 -> 1
rel a1 a2
rel a2 a3
rel a3 a1
rel b1 b2
rel b2 b3
rel b3 b1
weight a1 q
weight a2 q
weight a3 q
weight b1 q
weight b2 q
weight b3 q
";

/// Three vertices with a single no-relations cycle `a3 b1 a2 c b2` of weight
/// `q^6*t^5`; arrow `c` carries `q^2*t`, the others `q*t`.
pub const MERGED_TRIANGLES: &str = "\
vertex 1
vertex 2
vertex 3
arrow a2 2 -> 3
arrow a3 3 -> 1
arrow b1 1 -> 2
arrow b2 2 -> 3
arrow c 3 -> 2
rel a2 a3
rel b1 b2
rel b2 c
rel c a2
weight a2 q*t
weight a3 q*t
weight b1 q*t
weight b2 q*t
weight c q^2*t
";

/// Two vertices, `a, b: 1 -> 2`, `c, d: 2 -> 1`, with `ad = bc = db = ca = 0`;
/// generic weights.
pub const CRITICAL_PAIR: &str = "\
vertex 1
vertex 2
arrow a 1 -> 2
arrow b 1 -> 2
arrow c 2 -> 1
arrow d 2 -> 1
rel a d
rel b c
rel d b
rel c a
";

/// Parses and validates one of the fixtures above.
pub fn load(text: &str) -> (LocallyGentleQuiver, WeightFunction) {
    let f = parse_quiver(text).expect("fixture parses");
    (f.quiver.validate().expect("fixture is locally gentle"), f.weights)
}
