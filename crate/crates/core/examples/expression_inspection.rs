//! Activity, inlining, size statistics and infix text of a hand-written
//! genotype.
//!
//! Tree 0 is `sin(x0)`, tree 1 squares its first argument and the output
//! tree adds `f1(f0)` and `f1(x1)`. Inactive slots print in parentheses.

use modular_gomea::data::Matrix;
use modular_gomea::expr::{evaluate, inline, to_infix, to_infix_named, Activity, Genotype, Symbol, Tree, UsageStats};

fn main() -> modular_gomea::Result<()> {
    let filler = Symbol::Feature(0);
    let g = Genotype::new(vec![
        Tree::from_expression(3, "sin x0", filler)?,
        Tree::from_expression(3, "* a0 a0", filler)?,
        Tree::from_expression(3, "+ f1 f0 x0 x0 x0 f1 x1 x0", filler)?,
    ])?;
    println!("{}", g.to_lines());
    let activity = Activity::of(&g);

    for t in 0..g.n_trees() {
        let marks: Vec<String> = g
            .tree(t)
            .nodes()
            .iter()
            .enumerate()
            .map(|(s, sym)| if activity.is_active(t, s) { sym.to_string() } else { format!("({sym})") })
            .collect();
        println!("tree {t}: {}   arguments read {:?}", marks.join(" "), activity.uses_args(t));
    }
    println!("with calls:\n{}", to_infix(&g, false));
    println!("inlined: {}", to_infix(&g, true));
    let names = vec!["mass".to_string(), "speed".to_string()];
    println!("named: {}", to_infix_named(&g, true, &names));

    let flat = inline(&g);
    println!("expanded size {} height {}", flat.size(), flat.height());

    let x = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 0.5]])?;
    let modular = evaluate(&g, &x)?;
    let expanded = evaluate(&flat.to_genotype()?, &x)?;
    println!("predictions {modular:?}, inlined {expanded:?}");

    let stats = UsageStats::of(&g);
    println!("{stats:#?}");
    Ok(())
}
