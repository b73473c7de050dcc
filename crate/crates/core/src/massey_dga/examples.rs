//! Built-in dga models and obstruction inputs.

use super::parse::parse_ce;
use super::{tensor_product, Dga};

pub const HEISENBERG_CE: &str = "\
# Lie algebra of upper unitriangular 3x3 matrices; its nilmanifold is the real Iwasawa manifold
generators e1 e2 e3
bracket e1 e2 = e3
";

pub const TORUS3_CE: &str = "\
# abelian R^3
generators e1 e2 e3
";

pub const TORUS4_CE: &str = "\
generators t1 t2 t3 t4
";

/// Names accepted by [`builtin_model`].
pub const MODELS: [&str; 3] = ["iwasawa", "torus3", "iwasawa-product"];

pub fn builtin_model(name: &str) -> Option<Dga> {
    let parse = |s| parse_ce(s).expect("built-in model parses");
    match name {
        "iwasawa" => Some(parse(HEISENBERG_CE)),
        "torus3" => Some(parse(TORUS3_CE)),
        "iwasawa-product" => Some(tensor_product(&parse(HEISENBERG_CE), &parse(TORUS4_CE))),
        _ => None,
    }
}

/// Default classes for a built-in model; `None` means "every defined degree-one triple".
pub fn default_classes(name: &str) -> Option<&'static str> {
    match name {
        "iwasawa" | "iwasawa-product" => Some("e1;e2;e2"),
        _ => None,
    }
}

pub const K3_CONNECT_SUM: &str = "\
# W is the real Iwasawa manifold, L = K3 # (S1 x S3), target M = W x L
space W betti 1 2 2 1
space K3 betti 1 0 22 0 1 signature -16 even
space S1xS3 betti 1 1 0 1 1 signature 0 even
sum L = K3 # S1xS3
product M = W x L
target M
four-manifold L
massey W example iwasawa classes e1;e2;e2
";

pub const T7: &str = "\
space T3 betti 1 3 3 1
space T4 betti 1 4 6 4 1 signature 0 even
product T7 = T3 x T4
target T7
four-manifold T4
";

pub const INPUTS: [&str; 2] = ["k3-connect-sum", "t7"];

pub fn builtin_input(name: &str) -> Option<&'static str> {
    match name {
        "k3-connect-sum" => Some(K3_CONNECT_SUM),
        "t7" => Some(T7),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::obstruction::{obstruction_check, ObstructionInput, Status};
    use super::*;

    #[test]
    fn k3_connect_sum_verdict() {
        let inp = ObstructionInput::parse(K3_CONNECT_SUM, None).unwrap();
        let r = obstruction_check(&inp).unwrap();
        assert_eq!(&r.betti[..4], &[1, 3, 26, 48]);
        for c in r.checks.iter().filter(|c| c.category == "classical" || c.category == "spin") {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        assert_eq!(r.status_of("Massey products vanish where forced"), Some(Status::Fail));
        assert_eq!(r.verdict, "NO");
        assert_eq!(r.conclusion, "no torsion-free G2-structure");
    }

    #[test]
    fn torus_is_compatible() {
        let r = obstruction_check(&ObstructionInput::parse(T7, None).unwrap()).unwrap();
        assert_eq!(r.betti, vec![1, 7, 21, 35, 35, 21, 7, 1]);
        assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{:?}", r.checks);
        assert_eq!(r.verdict, "COMPATIBLE");
    }

    #[test]
    fn models() {
        assert_eq!(builtin_model("iwasawa").unwrap().betti(), vec![1, 2, 2, 1]);
        assert_eq!(builtin_model("iwasawa-product").unwrap().betti(), vec![1, 6, 16, 25, 25, 16, 6, 1]);
        assert!(builtin_model("nope").is_none());
    }
}
