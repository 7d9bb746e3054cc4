use super::boolean::BooleanCircuit;
use super::builder::Builder;
use super::mcvp::{compile_into, PConstants};
use super::LoweringError;
use crate::circuit::{boolean_alphabet, ComparatorCircuit};
use crate::formula::{Formula, Kind};
use crate::order::Lattice;
use crate::partition::PartitionLattice;

/// First assignment, in index order, of the seven P-ledger constants to
/// elements of `lattice` under which the copy chains hold:
/// `zero < one` and, for `v` in `{zero, one}`,
/// `(((v v x) ^ y) v z) ^ w = v` and `((v ^ x) v p) ^ w = v`.
/// The map need not be injective.
pub fn find_p_constants(lattice: &Lattice) -> Option<PConstants> {
    let n = lattice.len();
    let (m, j) = (|a, b| lattice.meet(a, b), |a, b| lattice.join(a, b));
    for zero in 0..n {
        for one in (0..n).filter(|&o| o != zero && lattice.leq(zero, o)) {
            for x in 0..n {
                for y in 0..n {
                    let v1 = [m(j(zero, x), y), m(j(one, x), y)];
                    for z in 0..n {
                        let v2 = [j(v1[0], z), j(v1[1], z)];
                        for w in (0..n).filter(|&w| m(v2[0], w) == zero && m(v2[1], w) == one) {
                            let p = (0..n).find(|&p| m(j(m(zero, x), p), w) == zero && m(j(m(one, x), p), w) == one);
                            if let Some(p) = p {
                                return Some(PConstants { zero, one, x, y, z, w, p });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn arg_leaves(f: &Formula) -> usize {
    match f.kind() {
        Kind::Arg => 1,
        Kind::Meet(l, r) | Kind::Join(l, r) => arg_leaves(l) + arg_leaves(r),
        _ => 0,
    }
}

/// Unfolds a unary formula into `b`, taking one line from `args` per
/// argument leaf. Returns the line holding the result.
fn emit_formula(b: &mut Builder, f: &Formula, args: &mut Vec<usize>) -> usize {
    match f.kind() {
        Kind::Const(e) => b.constant(*e),
        Kind::Input { var, map } => b.input(*var, map.to_vec()),
        Kind::Arg => args.pop().expect("one line per argument leaf"),
        Kind::Meet(l, r) => {
            let (a, c) = (emit_formula(b, l, args), emit_formula(b, r, args));
            b.gate(a, c);
            a
        }
        Kind::Join(l, r) => {
            let (a, c) = (emit_formula(b, l, args), emit_formula(b, r, args));
            b.gate(c, a);
            a
        }
    }
}

/// Compiles `c` and its De Morgan dual over `pl`, sends each result through
/// the `>= one` indicator, and combines them as `(X ^ C') v (Y ^ C'')`.
/// The output is exactly `x` when `c` outputs 1 and exactly `y` otherwise.
/// The accepting element is `x`.
pub fn normalize_acceptor(
    c: &BooleanCircuit,
    pl: &PartitionLattice,
    x: usize,
    y: usize,
) -> Result<ComparatorCircuit, LoweringError> {
    c.validate()?;
    if x == y {
        return Err(LoweringError::Malformed("accept and reject elements must differ".into()));
    }
    if x >= pl.len() || y >= pl.len() {
        return Err(LoweringError::Malformed("target element out of range".into()));
    }
    let lattice = pl.lattice();
    let k = find_p_constants(lattice)
        .ok_or_else(|| LoweringError::EmbeddingUnavailable(format!("no copy constants in the lattice of {} partitions", pl.len())))?;
    let ind = &pl.indicators()[k.one];
    let uses = arg_leaves(ind);
    let mut b = Builder::new(lattice.bounded().clone());
    let mut halves = Vec::with_capacity(2);
    for src in [c.clone(), c.dual()] {
        let mut lines = compile_into(&mut b, &src, &k, uses)?;
        halves.push(emit_formula(&mut b, ind, &mut lines));
    }
    let xc = b.constant(x);
    let yc = b.constant(y);
    b.gate(xc, halves[0]);
    b.gate(yc, halves[1]);
    b.gate(xc, yc);
    Ok(b.finish(boolean_alphabet(), yc, x))
}
