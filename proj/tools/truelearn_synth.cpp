// Writes a synthetic cohort: an event log and a matching relatedness table.

#include <CLI11.hpp>

#include <iostream>

#include "truelearn/synthetic.hpp"
#include "truelearn/text.hpp"

namespace tl = truelearn;

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic learner cohort"};
  tl::SyntheticCohortConfig cfg;
  std::string events = "events.csv";
  std::string table = "sr_table.csv";
  app.add_option("--learners", cfg.n_learners)->capture_default_str();
  app.add_option("--clusters", cfg.n_clusters)->capture_default_str();
  app.add_option("--topics-per-cluster", cfg.topics_per_cluster)->capture_default_str();
  app.add_option("--min-events", cfg.min_events)->capture_default_str();
  app.add_option("--max-events", cfg.max_events)->capture_default_str();
  app.add_option("--seed", cfg.seed)->capture_default_str();
  app.add_option("--events-out", events)->capture_default_str();
  app.add_option("--sr-out", table)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto cohort = tl::generate_cohort(cfg);
    tl::write_file(events, tl::write_events_csv(cohort.dataset));
    tl::write_file(table, tl::write_sr_table_csv(cohort.table));
    std::cerr << "wrote " << cohort.dataset.learners.size() << " learners ("
              << cohort.dataset.num_events() << " events) to " << events << " and "
              << cohort.table.size() << " pairs to " << table << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
