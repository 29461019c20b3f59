use super::{cartan_alternating, cartan_exact};
use crate::algebra::{Matrix, RationalFunction};
use crate::quiver::{LocallyGentleQuiver, WeightFunction};

/// `C_Q(x) * C_dual(-x)`, where `-x` flips the sign of odd-length paths.
pub fn duality_product(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> Matrix<RationalFunction> {
    let c = cartan_exact(lgq, w);
    let d = cartan_alternating(&lgq.dual(), w);
    c.entries().matmul(d.entries())
}

/// True when the Cartan matrix and the sign-flipped dual Cartan matrix are
/// mutually inverse.
pub fn verify_duality(lgq: &LocallyGentleQuiver, w: &WeightFunction) -> bool {
    let p = duality_product(lgq, w);
    let id = Matrix::<RationalFunction>::identity(p.rows());
    let ok = p.iter().all(|(ij, x)| x == &id[ij]);
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::cartan_exact;
    use crate::catalog;
    use crate::quiver::Quiver;

    #[test]
    fn fixtures_satisfy_duality() {
        for text in [
            catalog::GENTLE_LOOP,
            catalog::FREE_LOOP,
            catalog::TWO_TRIANGLES,
            catalog::MERGED_TRIANGLES,
            catalog::CRITICAL_PAIR,
        ] {
            let (lgq, w) = catalog::load(text);
            assert!(verify_duality(&lgq, &w), "{text}");
            assert!(verify_duality(&lgq, &WeightFunction::generic(lgq.quiver())), "{text}");
        }
    }

    #[test]
    fn arrowless_quiver_is_self_inverse() {
        let lgq = Quiver::build(&["1", "2"], &[], &[]).unwrap().validate().unwrap();
        assert!(verify_duality(&lgq, &WeightFunction::generic(lgq.quiver())));
    }

    #[test]
    fn sign_flip_agrees_with_substitution_for_generic_weights() {
        let (lgq, _) = catalog::load(catalog::TWO_TRIANGLES);
        let w = WeightFunction::generic(lgq.quiver());
        let dual = lgq.dual();
        let flipped = super::cartan_alternating(&dual, &w);
        let plain = cartan_exact(&dual, &w);
        let map = w.negation_map();
        for ((i, j), x) in plain.entries().iter() {
            assert_eq!(&x.substitute(&map).unwrap(), flipped.entry(i, j));
        }
    }
}
