#include "domainminer/eval.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <mutex>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "domainminer/io.hpp"

namespace domainminer {

std::vector<std::pair<double, int>> cactus_points(std::vector<double> solved_times) {
    std::sort(solved_times.begin(), solved_times.end());
    std::vector<std::pair<double, int>> points;
    double cum = 0.0;
    for (std::size_t i = 0; i < solved_times.size(); ++i) {
        cum += solved_times[i];
        points.emplace_back(cum, static_cast<int>(i) + 1);
    }
    return points;
}

namespace {

const char* status_name(SolveResult::Status s) {
    switch (s) {
        case SolveResult::Status::Optimal: return "optimal";
        case SolveResult::Status::Infeasible: return "infeasible";
        default: return "timeout";
    }
}

std::string file_stem(const std::string& encoding) {
    std::string s = encoding;
    std::replace(s.begin(), s.end(), '+', '_');
    return s;
}

} // namespace

EvalResult run_eval(const std::vector<ManifestEntry>& manifest, const std::string& base_dir,
                    const EvalOptions& options) {
    if (options.encodings.empty()) throw ConfigError("no encodings requested");
    if (!options.solver.builtin && options.solver.command.empty())
        throw ConfigError("external solver requested but no command given");
    const int jobs = std::max(1, options.jobs);

    // Load all instances up front; solving dominates.
    std::vector<PartialMatrix> matrices;
    matrices.reserve(manifest.size());
    for (const ManifestEntry& e : manifest)
        matrices.push_back(read_matrix_file(base_dir.empty() ? e.path : base_dir + "/" + e.path));

    std::filesystem::create_directories(options.out_dir);
    EvalResult result;
    for (const std::string& enc_name : options.encodings) {
        EncodingConfig flags = parse_encoding_name(enc_name);
        std::vector<EvalRow> rows(manifest.size());

        std::atomic<std::size_t> next{0};
        std::atomic<bool> aborted{false};
        std::mutex error_mutex;
        std::string error_message;
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= manifest.size() || aborted.load()) return;
                const ManifestEntry& entry = manifest[i];
                EvalRow row;
                row.instance = entry.path;
                auto t0 = std::chrono::steady_clock::now();
                try {
                    MineResult mr = mine(matrices[i], flags, entry.m, options.solver,
                                         options.timeout_seconds);
                    row.status = mr.status;
                    if (mr.status == SolveResult::Status::Optimal) row.objective = mr.objective;
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    error_message = entry.path + ": " + e.what();
                    aborted.store(true);
                    return;
                }
                row.seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                rows[i] = std::move(row);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (aborted.load()) throw SolverError("eval aborted: " + error_message);

        // Per-instance CSV.
        std::string stem = options.out_dir + "/" + file_stem(enc_name);
        {
            std::ofstream csv(stem + ".csv");
            csv << "instance,status,seconds,objective\n";
            for (const EvalRow& row : rows)
                csv << row.instance << ',' << status_name(row.status) << ',' << std::fixed
                    << std::setprecision(3) << row.seconds << ',' << row.objective << '\n';
        }

        EvalSummary summary;
        summary.encoding = enc_name;
        std::vector<double> solved_times;
        for (const EvalRow& row : rows)
            if (row.status != SolveResult::Status::Timeout) {
                ++summary.solved;
                summary.total_seconds += row.seconds;
                solved_times.push_back(row.seconds);
            }
        {
            std::ofstream cactus(stem + "_cactus.csv");
            cactus << "cum_seconds,solved\n";
            for (auto [t, i] : cactus_points(solved_times))
                cactus << std::fixed << std::setprecision(3) << t << ',' << i << '\n';
        }
        result.summaries.push_back(summary);
        result.rows_per_encoding.emplace_back(enc_name, std::move(rows));
    }

    std::ofstream summary_csv(options.out_dir + "/summary.csv");
    summary_csv << "encoding,solved,total_seconds\n";
    for (const EvalSummary& s : result.summaries)
        summary_csv << s.encoding << ',' << s.solved << ',' << std::fixed << std::setprecision(3)
                    << s.total_seconds << '\n';
    return result;
}

std::string format_summary_table(const std::vector<EvalSummary>& summaries) {
    std::ostringstream out;
    out << std::left << std::setw(16) << "encoding" << std::right << std::setw(8) << "solved"
        << std::setw(16) << "total seconds" << '\n';
    for (const EvalSummary& s : summaries)
        out << std::left << std::setw(16) << s.encoding << std::right << std::setw(8) << s.solved
            << std::setw(16) << std::fixed << std::setprecision(1) << s.total_seconds << '\n';
    return out.str();
}

} // namespace domainminer
