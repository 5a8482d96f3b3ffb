//! Puts topologies on a monoid and the space it acts on, then checks the
//! continuity of the globalization and the openness of the embedding.

use pcat::dsl::parse;
use pcat::globalize::build_globalization;
use pcat::topo::summarize;

const SOURCE: &str = "
category M
  object e
  mor a : e -> e
  comp a . a = a
end
action X
  point 0 1
  act e 0 = 0
  act e 1 = 1
  act a 0 = 0
  act a 1 = 0
end
topology mor
  open a
  open a e
end
topology space
  open 0
  open 0 1
end
";

fn main() {
    let s = parse(SOURCE).expect("valid scenario");
    let (top_mor, top_x) = (s.mor_topology().unwrap(), s.space_topology().unwrap());
    let glob = build_globalization(&s.category, &s.action).unwrap();
    let summary = summarize(&s.category, &s.action, &top_mor, &top_x, &glob).unwrap();
    println!("topological category: {}", summary.topological_category);
    println!(
        "CA1 {}  CA2 {}",
        summary.continuity.ca1, summary.continuity.ca2
    );
    println!(
        "star open {}  graph open {}",
        summary.star_open, summary.graph_open
    );
    let y = summary.y.as_ref().expect("continuous action");
    for (p, label) in y.topology.labels().iter().enumerate() {
        let u = y.topology.set_names(y.topology.neighbourhood(p));
        println!("  U({label}) = {{{}}}", u.join(","));
    }
    println!("i continuous {}", y.report.i_continuous);
    println!("action on Y continuous {}", y.report.action_continuous);
    println!("i open {}", y.embedding_open);
}
