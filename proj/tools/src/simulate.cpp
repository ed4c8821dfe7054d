#include "eslr_cli/cli.hpp"

namespace eslr::cli {

void simulate_to_files(const SimulateOptions& o) {
  const SimulatedDataset sim = simulate(o.dgp);
  const Index p = sim.data.p();

  std::vector<std::string> header;
  for (Index j = 0; j < p; ++j) header.push_back("x" + std::to_string(j + 1));
  header.push_back("y");
  Eigen::MatrixXd table(sim.data.n(), p + 1);
  table << sim.data.X, sim.data.y;
  csv::write_file(o.out, header, table);

  // One row, named so that fit --truth can match columns.
  std::vector<std::string> truth_header;
  for (Index j = 0; j < p; ++j) truth_header.push_back("beta_x" + std::to_string(j + 1));
  truth_header.push_back("sigma");
  Eigen::RowVectorXd truth(p + 1);
  truth << sim.beta.transpose(), sim.sigma;
  csv::write_file(o.truth_out, truth_header, truth);
}

}  // namespace eslr::cli
