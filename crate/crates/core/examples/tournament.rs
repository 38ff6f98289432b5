//! Round robin over the default roster, written as a standings CSV.

use teamup::arena::emit::write_table_to;
use teamup::arena::{default_roster, run_tournament, TournamentConfig};
use teamup::Lemonade;

fn main() {
    let config = TournamentConfig::new(default_roster(), 10, 100, 0);
    let outcome = run_tournament(&Lemonade, &config, false).unwrap();
    println!("{} matches", outcome.matches.len());
    write_table_to(std::io::stdout(), &outcome.table).unwrap();
}
