//! Run the validator over a specification with several problems.

use psw::dsl::{parse, usable, validate};

fn main() {
    let src = r#"space s {
  var a : 0..4;
  var b : 0..9;
  var unused : 0..2;
  op fill(x) { pre: x < cap(x); eff: x := cap(x) }
  op never(x) { pre: x > cap(x); eff: x := 0 }
}

instance six of s {
  init: a = 0, b = 0, unused = 0;
  goal: a = 6;
}
"#;
    let doc = parse(src).expect("parses");
    let findings = validate(&doc);
    for f in &findings {
        println!("{f}");
    }
    println!("usable: {}", usable(&findings));
}
