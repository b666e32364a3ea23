#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sshent/analysis.hpp"
#include "sshent/entanglement.hpp"

namespace sshent {

/// 17 significant digits; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double x);
/// Inverse of format_double (exact for its output). Throws ValidationError.
double parse_double(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
void write_csv(std::ostream& out, const CsvTable& table);

/// Header: lambda,eta1,eta2,c1,c2,dc2_dlambda,n,boundary,seed
/// n is the cell count or "inf"; seed is empty for clean chains.
CsvTable sweep_table(const SweepResult& r);
SweepResult sweep_from_table(const CsvTable& t);
nlohmann::json sweep_json(const SweepResult& r);

/// Header: mu,eta_z,density,compressibility,n
CsvTable kitaev_table(const KitaevTable& t);
nlohmann::json kitaev_json(const KitaevTable& t);

/// Header: lambda,mean_c2,std_c2,n,amplitude,realizations
CsvTable disorder_table(const DisorderTable& t);
/// Records plus the per-seed C2 rows.
nlohmann::json disorder_json(const DisorderTable& t);

/// Header: lambda,c2,dc2_dlambda,n,fill
CsvTable obc_table(const ObcTable& t);
nlohmann::json obc_json(const ObcTable& t);

nlohmann::json critical_json(const CriticalReport& r);
/// key = value lines.
std::string critical_text(const CriticalReport& r);

/// {num_cells, num_sites, phase, c1, c2, vertices: [...], edges: [...]}
nlohmann::json graph_json(const EntangledGraph& g);
/// "# phase <label>" followed by "site1 site2 concurrence" lines.
std::string graph_edge_list(const EntangledGraph& g);

std::string to_string(Filling f);

/// Two-column whitespace-delimited series. Writes <stem>_c1.dat,
/// <stem>_c2.dat and <stem>_dc2.dat (x = lambda). Rows with a NaN value are
/// skipped. An empty sweep writes nothing. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const SweepResult& r, const std::filesystem::path& stem);

/// <stem>_lambda_plus.dat: N versus lambda_plus(N).
std::filesystem::path emit_lambda_plus_series(std::span<const int> sizes, std::span<const double> values,
                                              const std::filesystem::path& stem);

/// <stem>_c2.dat and <stem>_dc2.dat for an open-chain table.
std::vector<std::filesystem::path> emit_plot_data(const ObcTable& t, const std::filesystem::path& stem);

/// <stem>_density.dat and <stem>_compressibility.dat (x = mu).
std::vector<std::filesystem::path> emit_plot_data(const KitaevTable& t, const std::filesystem::path& stem);

/// <stem>_mean_c2.dat (x = lambda).
std::vector<std::filesystem::path> emit_plot_data(const DisorderTable& t, const std::filesystem::path& stem);

/// Writes text to a file, throwing Error when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sshent
