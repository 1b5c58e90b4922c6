#pragma once

// Minimal CSV/plot-data writers with fixed formatting so that equal inputs
// produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "gsp/errors.hpp"

namespace gsp::csv {

inline std::string fmt(double v, int sig = 15) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
    return buf;
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path) {
        if (!out_) throw IoError("cannot open for writing: " + path);
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out_ << (i ? "," : "") << cols[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& vals, int sig = 15) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            out_ << (i ? "," : "") << fmt(vals[i], sig);
        out_ << "\n";
    }

    void raw(const std::string& line) { out_ << line << "\n"; }

private:
    std::ofstream out_;
};

} // namespace gsp::csv
