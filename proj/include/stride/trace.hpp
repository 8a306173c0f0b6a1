#ifndef STRIDE_TRACE_HPP
#define STRIDE_TRACE_HPP

#include <sstream>
#include <string>
#include <vector>

namespace stride {

// One search event: which phase produced it, the heuristic value attached to
// it, and how many states had been evaluated when it was recorded.
struct TraceRow {
    std::string phase;
    int h = 0;
    long evaluated = 0;
    bool operator==(const TraceRow &) const = default;
};

class Trace {
  public:
    void add(std::string phase, int h, long evaluated) {
        rows_.push_back({std::move(phase), h, evaluated});
    }

    const std::vector<TraceRow> &rows() const { return rows_; }

    std::string to_csv() const {
        std::ostringstream os;
        os << "event,phase,h,evaluated\n";
        for (std::size_t i = 0; i < rows_.size(); ++i)
            os << i << ',' << rows_[i].phase << ',' << rows_[i].h << ','
               << rows_[i].evaluated << '\n';
        return os.str();
    }

  private:
    std::vector<TraceRow> rows_;
};

} // namespace stride

#endif
