//! Build a container space in code, ground its operators and step through
//! a few states by hand.

use std::sync::Arc;

use psw::expr::Expr;
use psw::space::{apply, classify, container_space, ProblemInstance, StateVector, VarSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = Arc::new(container_space(
        "jugs",
        vec![
            VarSpec::new("a", 3).with_unit("gallon"),
            VarSpec::new("b", 5).with_unit("gallon"),
        ],
    )?);
    println!(
        "{} states, {} grounded operators:",
        space.state_count(),
        space.operators().len()
    );
    for op in space.operators() {
        println!("  {}", op.display());
    }

    let goal = Expr::eq(Expr::var("b"), Expr::int(4));
    let inst = ProblemInstance::new("b_is_4", space.clone(), StateVector::zeros(2), goal)?;

    let mut s = inst.initial().clone();
    for name in ["fill(b)", "pour(b,a)", "empty(a)", "pour(b,a)", "fill(b)", "pour(b,a)"] {
        s = apply(&space, space.operator(name).expect("grounded"), &s)?;
        println!("{name:<10} -> {s}  {:?}", classify(&inst, &s, true));
    }
    Ok(())
}
