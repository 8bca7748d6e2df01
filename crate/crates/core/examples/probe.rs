use teamgame::presets;
use teamgame::game::*;
use teamgame::views::*;
use teamgame::switching::PlayerAction;

fn main() {
    let cfg = presets::inverse_info(2.0);
    let profile = solve_equilibrium(&cfg).unwrap();
    println!("diag: {:?}", profile.diagnostics);
    for eq in &profile.equilibria {
        println!("eq: A={:.4} B={:.4}", eq[0].effort, eq[1].effort);
    }
    let second = profile.second_period.clone();
    let eb = profile.equilibria[0][1].effort;
    for e in [0.20, 0.25, 0.275, 0.30, 0.325, 0.35] {
        let v = first_period_objective(&cfg, 0, PlayerAction{tech:0, effort:e},
            PlayerAction{tech:0, effort:eb}, &second).unwrap();
        println!("  objA({e}) vs B@{eb:.4} = {v:.9}");
    }
    // and Bob's objective against Ann at 0.3
    for e in [0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0] {
        let v = first_period_objective(&cfg, 1, PlayerAction{tech:0, effort:e},
            PlayerAction{tech:0, effort:0.3}, &second).unwrap();
        println!("  objB({e}) vs A@0.3 = {v:.9}");
    }
}
