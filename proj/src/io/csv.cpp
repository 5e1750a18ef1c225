#include "cevi/io/csv.hpp"

#include "cevi/format.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace cevi::io {

namespace {

std::string at_line(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_real(std::string_view text, bool allow_fraction) {
    text = trim(text);
    if (allow_fraction) {
        if (const auto slash = text.find('/'); slash != std::string_view::npos) {
            const double num = parse_real(text.substr(0, slash));
            const double den = parse_real(text.substr(slash + 1));
            if (den == 0) throw InputError("division by zero in '" + std::string(text) + "'");
            return num / den;
        }
    }
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), value);
    if (body.empty() || res.ec != std::errc{} || res.ptr != body.data() + body.size())
        throw InputError("not a number: '" + std::string(text) + "'");
    return value;
}

long long parse_integer(std::string_view text) {
    text = trim(text);
    long long value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw InputError("not an integer: '" + std::string(text) + "'");
    return value;
}

CensoredSample<double> read_censored_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> z;
    std::vector<std::uint8_t> delta;
    while (next_line(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            const auto cols = split(text, ',');
            if (cols.size() != 2 || cols[0] != "z" || cols[1] != "delta")
                throw InputError(at_line(line_no, "expected header 'z,delta'"));
            header_seen = true;
            continue;
        }
        const auto cols = split(text, ',');
        if (cols.size() != 2) throw InputError(at_line(line_no, "expected 2 columns, got " + std::to_string(cols.size())));
        double zi = 0;
        long long di = 0;
        try {
            zi = parse_real(cols[0]);
            di = parse_integer(cols[1]);
        } catch (const InputError& e) {
            throw InputError(at_line(line_no, e.what()));
        }
        if (!std::isfinite(zi) || !(zi > 0)) throw InputError(at_line(line_no, "z must be positive and finite"));
        if (di != 0 && di != 1) throw InputError(at_line(line_no, "delta must be 0 or 1, got " + std::string(cols[1])));
        z.push_back(zi);
        delta.push_back(static_cast<std::uint8_t>(di));
    }
    if (!header_seen) throw InputError("empty input: expected header 'z,delta'");
    if (z.size() < 2) throw InputError("need at least 2 data rows, got " + std::to_string(z.size()));
    const ArrayXd za = Eigen::Map<const ArrayXd>(z.data(), static_cast<Index>(z.size()));
    const IndicatorArray da = Eigen::Map<const IndicatorArray>(delta.data(), static_cast<Index>(delta.size()));
    return CensoredSample<double>::from_observations(za, da);
}

void write_estimates_csv(std::ostream& out, const std::vector<EstimateRecord<double>>& records) {
    out << kEstimatesHeader << '\n';
    for (const auto& r : records) {
        out << r.k << ',' << to_string(r.spec.family) << ',' << to_string(r.spec.method) << ','
            << format_real(r.spec.alpha) << ',' << format_real(r.value) << ',' << format_real(r.p_hat) << ','
            << (r.degenerate ? 1 : 0) << '\n';
    }
}

void write_study_csv(std::ostream& out, const StudyResult& result) {
    out << kStudyHeader << '\n';
    for (const auto& c : result.cells) {
        out << c.k << ',' << to_string(c.spec.family) << ',' << to_string(c.spec.method) << ','
            << format_real(c.spec.alpha) << ',' << format_real(c.median_bias) << ',' << format_real(c.mse) << ','
            << format_real(c.mean) << ',' << format_real(c.variance) << ',' << c.degenerate_count << ','
            << result.reps << ',' << result.n << ',' << format_real(result.gamma_x) << ','
            << format_real(result.gamma_c) << '\n';
    }
}

StudyResult read_study_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line) || trim(line) != kStudyHeader)
        throw InputError(at_line(1, "expected header '" + std::string(kStudyHeader) + "'"));
    ++line_no;
    StudyResult result;
    bool first = true;
    while (next_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 13) throw InputError(at_line(line_no, "expected 13 columns, got " + std::to_string(cols.size())));
        try {
            CellSummary c;
            c.k = parse_integer(cols[0]);
            const auto family = parse_family(cols[1]);
            const auto method = parse_method(cols[2]);
            if (!family) throw InputError("unknown family '" + std::string(cols[1]) + "'");
            if (!method) throw InputError("unknown method '" + std::string(cols[2]) + "'");
            c.spec = EstimatorSpec<double>(*family, *method, parse_real(cols[3]));
            c.median_bias = parse_real(cols[4]);
            c.mse = parse_real(cols[5]);
            c.mean = parse_real(cols[6]);
            c.variance = parse_real(cols[7]);
            c.degenerate_count = parse_integer(cols[8]);
            const Index reps = parse_integer(cols[9]);
            const Index n = parse_integer(cols[10]);
            const double gx = parse_real(cols[11]);
            const double gc = parse_real(cols[12]);
            if (first) {
                result.reps = reps;
                result.n = n;
                result.gamma_x = gx;
                result.gamma_c = gc;
                first = false;
            } else if (reps != result.reps || n != result.n || gx != result.gamma_x || gc != result.gamma_c) {
                throw InputError("design columns differ from the first row");
            }
            result.cells.push_back(c);
        } catch (const InputError& e) {
            throw InputError(at_line(line_no, e.what()));
        } catch (const DomainError& e) {
            throw InputError(at_line(line_no, e.what()));
        }
    }
    return result;
}

}  // namespace cevi::io
