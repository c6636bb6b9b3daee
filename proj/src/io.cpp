#include "crackfd/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace crackfd::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

void write_metadata(std::ostream& out, const Metadata& metadata) {
    for (const auto& line : metadata) {
        out << "# " << line << '\n';
    }
}

std::string level_or_none(const std::optional<std::size_t>& level) {
    return level ? std::to_string(*level) : "none";
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) cells.push_back(cell);
    if (!line.empty() && line.back() == sep) cells.emplace_back();
    return cells;
}

}  // namespace

template <std::floating_point T>
void write_trajectory_csv(std::ostream& out, const Trajectory<T>& trajectory, const Grid& grid,
                          const Metadata& metadata) {
    out << "# status=" << to_string(trajectory.status) << '\n';
    write_metadata(out, metadata);
    out << "t,l,f,l2f\n";
    for (const auto& snap : trajectory.snapshots) {
        const std::string t = format_real(level_time(snap.time_index, grid));
        for (std::size_t i = 0; i < snap.values.size(); ++i) {
            const double l = node_length(i, grid);
            const T lt = static_cast<T>(l);
            const T f = snap.values[i];
            out << t << ',' << format_real(l) << ',' << format_real(f) << ',' << format_real(lt * lt * f)
                << '\n';
        }
    }
}

template <std::floating_point T>
void write_trajectory_csv(const Trajectory<T>& trajectory, const Grid& grid,
                          const std::filesystem::path& path, const Metadata& metadata) {
    auto out = open_for_write(path);
    write_trajectory_csv(out, trajectory, grid, metadata);
    finish(out, path);
}

template <std::floating_point T>
void write_surface(std::ostream& out, const Trajectory<T>& trajectory, const Grid& grid) {
    bool first = true;
    for (const auto& snap : trajectory.snapshots) {
        if (!first) out << '\n';
        first = false;
        const std::string t = format_real(level_time(snap.time_index, grid));
        for (std::size_t i = 0; i < snap.values.size(); ++i) {
            const double l = node_length(i, grid);
            const T lt = static_cast<T>(l);
            out << format_real(l) << ' ' << t << ' ' << format_real(lt * lt * snap.values[i]) << '\n';
        }
    }
}

template <std::floating_point T>
void write_surface(const Trajectory<T>& trajectory, const Grid& grid,
                   const std::filesystem::path& path) {
    auto out = open_for_write(path);
    write_surface(out, trajectory, grid);
    finish(out, path);
}

void write_report(std::ostream& out, const ComparisonReport& report, const Grid& grid,
                  const Metadata& metadata) {
    out << "# status=" << to_string(report.status) << '\n';
    write_metadata(out, metadata);
    out << "time_index,t,l1_error,l2_error,linf_error,second_moment_numeric,"
           "second_moment_analytic,total_variation\n";
    for (const auto& r : report.records) {
        out << r.time_index << ',' << format_real(level_time(r.time_index, grid)) << ','
            << format_real(r.l1_error) << ',' << format_real(r.l2_error) << ','
            << format_real(r.linf_error) << ',' << format_real(r.second_moment_numeric) << ','
            << format_real(r.second_moment_analytic) << ',' << format_real(r.total_variation) << '\n';
    }
}

void write_report(const ComparisonReport& report, const Grid& grid,
                  const std::filesystem::path& path, const Metadata& metadata) {
    auto out = open_for_write(path);
    write_report(out, report, grid, metadata);
    finish(out, path);
}

void write_report(std::ostream& out, const PrecisionReport& report, const Grid& grid,
                  const Metadata& metadata) {
    out << "# status_f32=" << to_string(report.status_f32) << '\n';
    out << "# status_f64=" << to_string(report.status_f64) << '\n';
    out << "# blowup_level_f32=" << level_or_none(report.status_f32.blown_up_at) << '\n';
    out << "# blowup_level_f64=" << level_or_none(report.status_f64.blown_up_at) << '\n';
    for (std::size_t k = 0; k < kDivergenceThresholds.size(); ++k) {
        out << "# first_divergence_above_" << format_real(kDivergenceThresholds[k]) << '='
            << level_or_none(report.first_exceeding[k]) << '\n';
    }
    write_metadata(out, metadata);
    out << "time_index,t,relative_l2_divergence\n";
    for (const auto& d : report.divergence) {
        out << d.time_index << ',' << format_real(level_time(d.time_index, grid)) << ','
            << format_real(d.relative_l2) << '\n';
    }
}

void write_report(const PrecisionReport& report, const Grid& grid,
                  const std::filesystem::path& path, const Metadata& metadata) {
    auto out = open_for_write(path);
    write_report(out, report, grid, metadata);
    finish(out, path);
}

template <std::floating_point T>
CsvTable<T> read_csv(std::istream& in) {
    CsvTable<T> table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (have_header) throw FormatError("metadata after header: " + line);
            table.metadata.push_back(line.size() > 2 ? line.substr(2) : std::string{});
            continue;
        }
        auto cells = split(line, ',');
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw FormatError("row has " + std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(table.header.size()));
        }
        std::vector<T> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_real<T>(c));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw FormatError("missing header line");
    return table;
}

template <std::floating_point T>
CsvTable<T> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_csv<T>(in);
}

#define CRACKFD_IO_INSTANTIATE(T)                                                                 \
    template void write_trajectory_csv<T>(std::ostream&, const Trajectory<T>&, const Grid&,       \
                                          const Metadata&);                                       \
    template void write_trajectory_csv<T>(const Trajectory<T>&, const Grid&,                      \
                                          const std::filesystem::path&, const Metadata&);         \
    template void write_surface<T>(std::ostream&, const Trajectory<T>&, const Grid&);             \
    template void write_surface<T>(const Trajectory<T>&, const Grid&, const std::filesystem::path&); \
    template CsvTable<T> read_csv<T>(std::istream&);                                              \
    template CsvTable<T> read_csv<T>(const std::filesystem::path&);

CRACKFD_IO_INSTANTIATE(float)
CRACKFD_IO_INSTANTIATE(double)

#undef CRACKFD_IO_INSTANTIATE

}  // namespace crackfd::io
