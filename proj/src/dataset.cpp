#include "ut/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ut {
namespace {

// §-listing of the insurance-risk ratios, shipped verbatim so Table-12 style
// reproduction never depends on user transcription.
const char* kRisk73 =
    "0.0278999962  0.0607999924 0.0215000095  0.0315000095 0.0040000006\n"
    "0.04070000172 0.1332999992 0.05820000172 0.0205999943 0.04309999943\n"
    "0.0694000057  0.0457999924 0.09130000114 0.0125       0.0036000014\n"
    "0.0534999905  0.1396000004 0.09          0.119200008  0.0782999924\n"
    "0.03289999962 0.1937999916 0.00930000007 0.1753000069 0.65\n"
    "0.0931000042  0.0375       0.10          0.14         0.08510000229\n"
    "0.2886000061  0.0028000001 0.1260999966  0.0064999976 0.05090000153\n"
    "0.04070000172 0.0411000134 0.1597000027  0.112899996  0.1356999969\n"
    "0.04340000153 0.0122000029 0.0432000172  0.0885000381 0.1244999981\n"
    "0.0432999924  0.0628999962 0.0848999771  0.007599999  0.0020000003\n"
    "0.15          0.0093999998 0.2221999931  0.0254999952 0.0370000048\n"
    "0.03890000105 0.0297000029 0.127100004   0.0818000305 0.15\n"
    "0.0528999962  0.0611999886 0.0525        0.0571000038 0.18\n"
    "0.9755000305  0.0216000086 0.2171999931  0.7930000305 -\n"
    "0.0790000095  0.0350999999 0.1832999992  0.2912000084 -\n";

DatasetFile parse_text(const std::string& label, std::istream& in) {
    DatasetFile out{label, {}, 0, 0};
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            ++out.comments;
            line.erase(hash);
        }
        std::size_t col = 0;
        while (col < line.size()) {
            if (line[col] == ' ' || line[col] == '\t' || line[col] == ',' ||
                line[col] == '\r') {
                ++col;
                continue;
            }
            std::size_t end = col;
            while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
                   line[end] != ',' && line[end] != '\r')
                ++end;
            std::string tok = line.substr(col, end - col);
            std::string at = label + ":" + std::to_string(lineno) + ":" +
                             std::to_string(col + 1);
            if (tok == "-") {
                ++out.skipped;
            } else {
                char* tail = nullptr;
                double v = std::strtod(tok.c_str(), &tail);
                if (tail != tok.c_str() + tok.size())
                    throw std::runtime_error(at + ": unparseable token '" + tok + "'");
                if (!(v > 0.0) || !(v < 1.0))
                    throw std::runtime_error(at + ": value '" + tok +
                                             "' outside the open unit interval");
                out.values.push_back(v);
            }
            col = end;
        }
    }
    if (out.values.empty())
        throw std::runtime_error(label + ": no data values found");
    return out;
}

}  // namespace

DatasetFile parse_dataset(const std::string& path_or_tag) {
    if (path_or_tag == "risk73") {
        std::istringstream in(kRisk73);
        return parse_text("risk73", in);
    }
    std::ifstream in(path_or_tag);
    if (!in)
        throw std::runtime_error(path_or_tag + ": cannot open");
    return parse_text(path_or_tag, in);
}

}  // namespace ut
