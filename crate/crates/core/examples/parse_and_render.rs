//! Parse a loosely formatted specification, print its canonical form, and
//! show what a located diagnostic looks like.

use psw::dsl::{parse, render};

const SOURCE: &str = r#"
space jugs { var small : 0..3 unit "gallon"; var big : 0..5 unit "gallon";
  op fill(x) { pre: x < cap(x); eff: x := cap(x) }
  op empty(x) { pre: x > 0; eff: x := 0 }
  op pour(x, y) { pre: x > 0 and y < cap(y);
                  eff: x := max(0, x - (cap(y) - y)); y := min(cap(y), y + x) }
  constraint no_loop; constraint no_undo;
  failure: (small = 0 and big = 0) or (small = cap(small) and big = cap(big)); }
instance four of jugs { init: small = 0, big = 0; goal: small = 4 or big = 4; }
"#;

fn main() {
    let doc = parse(SOURCE).expect("example parses");
    print!("{}", render(&doc));

    let broken = SOURCE.replace("big = 0;", "big = 9;");
    match parse(&broken) {
        Ok(_) => unreachable!(),
        Err(d) => println!("\nwith an out-of-range start value:\n  {d}"),
    }
    match parse("space s { var a : 0..2; op e(x) { pre: y > 0; eff: x := 0 } }") {
        Ok(_) => unreachable!(),
        Err(d) => println!("with an unknown slot:\n  {d}"),
    }
}
