//! Ball dump format (debugging): a `#ball root=<id> r=<r>` header, one
//! `v <id> <degree-mark>` line per vertex in canonical (layer, label) order,
//! then `e <u> <v> <mult>` lines with original labels, smaller label first.

use std::fmt::Write as _;

use paspectra_core::local::DecoratedBall;

pub fn encode_ball(ball: &DecoratedBall) -> String {
    let mut out = String::new();
    let root_id = ball.vertices()[ball.root()].id;
    let _ = writeln!(out, "#ball root={} r={}", root_id, ball.radius());
    for v in ball.vertices() {
        let _ = writeln!(out, "v {} {}", v.id, v.mark);
    }
    let mut edges: Vec<(u32, u32, u32)> = ball
        .edges()
        .map(|(a, b, mult)| {
            let (ia, ib) = (ball.vertices()[a].id, ball.vertices()[b].id);
            (ia.min(ib), ia.max(ib), mult)
        })
        .collect();
    edges.sort_unstable();
    for (u, v, mult) in edges {
        let _ = writeln!(out, "e {u} {v} {mult}");
    }
    out
}
