//! The single-coloured builtins: `Com`, `Ass`, `AssNS` and `BCom`.

use super::{check_action, check_composable, Action, Colour, Flavour, Operad, Operation, Result};
use crate::finmaps::{block_substitute, Permutation};

fn star() -> &'static [String] {
    static STAR: std::sync::OnceLock<Vec<String>> = std::sync::OnceLock::new();
    STAR.get_or_init(|| vec!["*".to_string()])
}

fn single(arity: usize, token: Vec<u32>) -> Operation {
    Operation { target: 0, sources: vec![0; arity], token }
}

fn single_profile(target: Colour, sources: &[Colour]) -> bool {
    target == 0 && sources.iter().all(|&c| c == 0)
}

/// One operation per arity; shared by the three terminal operads.
macro_rules! terminal_operad {
    ($name:ident, $label:expr, $flavour:expr, $prefix:expr) => {
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $name;

        impl Operad for $name {
            fn name(&self) -> &str {
                $label
            }

            fn flavour(&self) -> Flavour {
                $flavour
            }

            fn colours(&self) -> &[String] {
                star()
            }

            fn ops_profile(&self, target: Colour, sources: &[Colour]) -> Result<Vec<Operation>> {
                Ok(if single_profile(target, sources) { vec![single(sources.len(), Vec::new())] } else { Vec::new() })
            }

            fn unit(&self, _colour: Colour) -> Operation {
                single(1, Vec::new())
            }

            fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation> {
                check_composable(outer, inner)?;
                Ok(single(inner.iter().map(Operation::arity).sum(), Vec::new()))
            }

            fn act(&self, op: &Operation, g: &Action) -> Result<Operation> {
                check_action($flavour, op, g)?;
                Ok(op.clone())
            }

            fn op_label(&self, op: &Operation) -> String {
                format!("{}{}", $prefix, op.arity())
            }
        }
    };
}

terminal_operad!(Com, "Com", Flavour::Symmetric, "c");
terminal_operad!(AssNS, "AssNS", Flavour::Nonsymmetric, "m");
terminal_operad!(BCom, "BCom", Flavour::Braided, "b");

/// The operad for monoids: the `n`-ary operations are the permutations in
/// `Σ_n`, composed by block substitution and acted on by right
/// multiplication.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ass;

impl Ass {
    pub fn op(p: &Permutation) -> Operation {
        single(p.arity(), p.images().iter().map(|&i| i as u32).collect())
    }

    pub fn perm(op: &Operation) -> Permutation {
        Permutation::new(op.token.iter().map(|&i| i as usize).collect()).expect("Ass tokens are permutations")
    }
}

impl Operad for Ass {
    fn name(&self) -> &str {
        "Ass"
    }

    fn flavour(&self) -> Flavour {
        Flavour::Symmetric
    }

    fn colours(&self) -> &[String] {
        star()
    }

    fn ops_profile(&self, target: Colour, sources: &[Colour]) -> Result<Vec<Operation>> {
        if !single_profile(target, sources) {
            return Ok(Vec::new());
        }
        Ok(Permutation::all(sources.len()).map(|p| Ass::op(&p)).collect())
    }

    fn unit(&self, _colour: Colour) -> Operation {
        Ass::op(&Permutation::identity(1))
    }

    fn compose(&self, outer: &Operation, inner: &[Operation]) -> Result<Operation> {
        check_composable(outer, inner)?;
        let blocks: Vec<Permutation> = inner.iter().map(Ass::perm).collect();
        Ok(Ass::op(&block_substitute(&Ass::perm(outer), &blocks)?))
    }

    fn act(&self, op: &Operation, g: &Action) -> Result<Operation> {
        let g = check_action(Flavour::Symmetric, op, g)?;
        Ok(Ass::op(&Ass::perm(op).compose(&g)?))
    }

    fn op_label(&self, op: &Operation) -> String {
        Ass::perm(op).to_string()
    }
}
