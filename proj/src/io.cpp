#include "mhd1d/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace mhd1d {

namespace {

class CsvFile {
public:
    explicit CsvFile(const std::string& path) : f_(std::fopen(path.c_str(), "wb")) {
        if (!f_) throw UsageError("cannot open for writing: " + path);
    }
    ~CsvFile() {
        if (f_) std::fclose(f_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void raw(const std::string& s) { std::fwrite(s.data(), 1, s.size(), f_); }
    void num(double v) { raw(format_full(v)); }
    void sep() { raw(","); }
    void end() { raw("\n"); }

private:
    std::FILE* f_;
};

}  // namespace

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::span<const char> bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(std::span<const char> bytes) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_snapshot_csv(const std::string& path, const State& state, const Grid& grid) {
    const int n = grid.n_cells();
    CsvFile f(path);
    f.raw("x,rho,u,b\n");
    for (int i = 0; i <= n; ++i) {
        f.num(grid.face(i));
        f.sep();
        if (i < n) f.num(state.rho[i]);
        f.sep();
        f.num(state.u[i]);
        f.sep();
        if (i < n) f.num(state.b[i]);
        f.end();
    }
}

State read_snapshot_csv(const std::string& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open snapshot: " + path);
    const int n = grid.n_cells();
    State s;
    s.rho.resize(n);
    s.b.resize(n);
    s.u.resize(n + 1);

    std::string line;
    if (!std::getline(in, line)) throw UsageError("empty snapshot file: " + path);
    for (int i = 0; i <= n; ++i) {
        if (!std::getline(in, line))
            throw UsageError("snapshot truncated at row " + std::to_string(i));
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // x column, implied by the grid
        std::getline(row, cell, ',');
        if (i < n) s.rho[i] = std::stod(cell);
        std::getline(row, cell, ',');
        s.u[i] = std::stod(cell);
        std::getline(row, cell, ',');
        if (i < n) s.b[i] = std::stod(cell);
    }
    return s;
}

void write_invariants_csv(const std::string& path, std::span<const InvariantRecord> records) {
    CsvFile f(path);
    f.raw("time,total_mass,energy,dissipation_accum,boundary_work,rho_min,rho_max,b_sup,"
          "ux_l2,weighted_h1\n");
    for (const InvariantRecord& r : records) {
        const double cols[] = {r.time,    r.total_mass, r.energy, r.dissipation_accum,
                               r.boundary_work, r.rho_min, r.rho_max, r.b_sup,
                               r.ux_l2,   r.weighted_h1};
        for (std::size_t i = 0; i < std::size(cols); ++i) {
            if (i) f.sep();
            f.num(cols[i]);
        }
        f.end();
    }
}

namespace {

void write_fits(CsvFile& f, const std::vector<ColumnFit>& fits) {
    for (const ColumnFit& cf : fits) {
        f.raw("# fit,");
        f.raw(cf.column);
        if (cf.fit) {
            f.raw(",exponent=");
            f.num(cf.fit->exponent);
            f.raw(",prefactor=");
            f.num(cf.fit->prefactor);
            f.raw(",r_squared=");
            f.num(cf.fit->r_squared);
        } else {
            f.raw(",not-applicable");
        }
        f.raw(",points_used=" + std::to_string(cf.points_used));
        if (cf.dropped_smallest) f.raw(",dropped_smallest_nu");
        if (!cf.note.empty()) f.raw("," + cf.note);
        f.end();
    }
}

}  // namespace

void write_sweep_report_csv(const std::string& path, const SweepReport& report) {
    CsvFile f(path);
    f.raw("nu,sup_rho_diff_l2,sup_u_diff_l2,sup_b_diff_l2,int_dux_diff_sq_dt,sup_ux_sq_l2,"
          "sup_weighted_h1\n");
    for (const SweepRow& r : report.rows) {
        const double cols[] = {r.nu,          r.sup_rho_diff, r.sup_u_diff, r.sup_b_diff,
                               r.int_dux_diff, r.sup_ux_sq,   r.sup_weighted_h1};
        for (std::size_t i = 0; i < std::size(cols); ++i) {
            if (i) f.sep();
            f.num(cols[i]);
        }
        f.end();
    }
    write_fits(f, report.fits);
    if (!report.floors.empty()) {
        const char* names[] = {"sup_rho_diff_l2", "sup_u_diff_l2", "sup_b_diff_l2",
                               "int_dux_diff_sq_dt"};
        for (std::size_t i = 0; i < report.floors.size() && i < std::size(names); ++i) {
            f.raw("# floor,");
            f.raw(names[i]);
            f.sep();
            f.num(report.floors[i]);
            f.end();
        }
    }
    for (const std::string& w : report.warnings) {
        f.raw("# warning,");
        f.raw(w);
        f.end();
    }
}

void write_layer_report_csv(const std::string& path, const LayerReport& report) {
    CsvFile f(path);
    f.raw("nu,delta,interior_b_sup,interior_rho_dev,full_b_sup,full_rho_dev,u_linf,"
          "sup_ux_sq_l2,sup_weighted_h1,thickness,rho_min,rho_max\n");
    for (const LayerRow& r : report.rows) {
        const double cols[] = {r.nu,     r.delta,          r.interior_b_sup, r.interior_rho_dev,
                               r.full_b_sup, r.full_rho_dev, r.u_linf,       r.sup_ux_sq,
                               r.sup_weighted_h1, r.thickness, r.rho_min,    r.rho_max};
        for (std::size_t i = 0; i < std::size(cols); ++i) {
            if (i) f.sep();
            f.num(cols[i]);
        }
        f.end();
    }
    write_fits(f, report.fits);
    f.raw("# boundary_peak,");
    f.num(report.boundary_peak);
    f.end();
}

void write_profile_csv(const std::string& path, const Grid& grid, std::span<const double> b) {
    if (b.size() != static_cast<std::size_t>(grid.n_cells()))
        throw UsageError("write_profile_csv: profile must live at cell centers");
    CsvFile f(path);
    f.raw("x,b\n");
    for (int i = 0; i < grid.n_cells(); ++i) {
        f.num(grid.center(i));
        f.sep();
        f.num(b[i]);
        f.end();
    }
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    CsvFile f(path);
    f.raw("tool: " + manifest.tool_version + "\n");
    f.raw("created: " + manifest.created_utc + "\n");
    f.raw("config_hash: " + manifest.config_hash + "\n");
    f.raw("scenario: " + manifest.description + "\n");
    f.raw("output_dir: " + manifest.output_dir + "\n");
    f.raw("files:\n");
    for (const std::string& name : manifest.files) f.raw("  " + name + "\n");
}

}  // namespace mhd1d
