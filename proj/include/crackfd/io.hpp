#pragma once

#include <charconv>
#include <concepts>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crackfd/diagnostics.hpp"
#include "crackfd/grid.hpp"

namespace crackfd::io {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to exactly `value`.
template <std::floating_point T>
std::string format_real(T value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

template <std::floating_point T>
T parse_real(std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw FormatError("not a real number: '" + std::string(text) + "'");
    }
    return value;
}

/// Free-form `# ...` lines placed after the status line of every output file.
using Metadata = std::vector<std::string>;

/**
 * Trajectory CSV:
 *
 *   # status=<Completed|BlownUpAt:N>
 *   # <metadata line>...
 *   t,l,f,l2f
 *   <one row per (snapshot, node), ordered by t then l>
 *
 * t = n*dt and l = i*dl are written as binary64, f and l2f in the run's precision.
 */
template <std::floating_point T>
void write_trajectory_csv(std::ostream& out, const Trajectory<T>& trajectory, const Grid& grid,
                          const Metadata& metadata = {});

template <std::floating_point T>
void write_trajectory_csv(const Trajectory<T>& trajectory, const Grid& grid,
                          const std::filesystem::path& path, const Metadata& metadata = {});

/// Plotter blocks of `l t l2f`, one block per snapshot, separated by one blank line.
template <std::floating_point T>
void write_surface(std::ostream& out, const Trajectory<T>& trajectory, const Grid& grid);

template <std::floating_point T>
void write_surface(const Trajectory<T>& trajectory, const Grid& grid,
                   const std::filesystem::path& path);

void write_report(std::ostream& out, const ComparisonReport& report, const Grid& grid,
                  const Metadata& metadata = {});
void write_report(const ComparisonReport& report, const Grid& grid,
                  const std::filesystem::path& path, const Metadata& metadata = {});

void write_report(std::ostream& out, const PrecisionReport& report, const Grid& grid,
                  const Metadata& metadata = {});
void write_report(const PrecisionReport& report, const Grid& grid,
                  const std::filesystem::path& path, const Metadata& metadata = {});

/// A `#`-metadata + header + numeric rows CSV read back as text and numbers.
template <std::floating_point T>
struct CsvTable {
    std::vector<std::string> metadata;  // without the leading "# "
    std::vector<std::string> header;
    std::vector<std::vector<T>> rows;
};

/// Parses every numeric cell as T (use the precision the file was written at).
template <std::floating_point T>
CsvTable<T> read_csv(std::istream& in);

template <std::floating_point T>
CsvTable<T> read_csv(const std::filesystem::path& path);

}  // namespace crackfd::io
