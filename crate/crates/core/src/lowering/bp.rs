use std::sync::{Arc, OnceLock};

use super::boolean::BranchingProgram;
use super::builder::Builder;
use super::LoweringError;
use crate::circuit::{boolean_alphabet, ComparatorCircuit};
use crate::order::{BoundedPoset, Poset};

/// The two-element lattice `0 < 1`.
pub fn boolean_poset() -> Arc<BoundedPoset> {
    static CELL: OnceLock<Arc<BoundedPoset>> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = Poset::new(&["0", "1"], &[("0", "1")]).expect("chain");
        Arc::new(BoundedPoset::try_new(p).expect("bounded"))
    })
    .clone()
}

/// Layered branching program to a skew comparator circuit over `0 < 1`.
///
/// Each state owns a line that is 1 iff the run reaches it. A state `s`
/// testing `x_i` gets two fresh literal lines and four gates that OR
/// `s ^ x_i` into its 1-successor and `s ^ !x_i` into its 0-successor.
pub fn bp_to_skewcc(bp: &BranchingProgram) -> Result<ComparatorCircuit, LoweringError> {
    bp.validate()?;
    let poset = boolean_poset();
    let (zero, one) = (poset.bottom(), poset.top());
    let mut b = Builder::new(poset);
    let line: Vec<usize> =
        (0..bp.states.len()).map(|s| b.constant(if s == bp.start { one } else { zero })).collect();
    for layer in &bp.layers {
        for &s in layer {
            let st = bp.states[s];
            let Some(var) = st.var else { continue };
            let x = b.input(var, vec![zero, one]);
            let nx = b.input(var, vec![one, zero]);
            b.gate(line[s], x);
            b.gate(line[s], line[st.on1]);
            b.gate(x, nx);
            b.gate(x, line[st.on0]);
        }
    }
    Ok(b.finish(boolean_alphabet(), line[bp.accept], one))
}
