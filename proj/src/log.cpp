#include "bathdisc/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace bathdisc {

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("BATHDISC_LOG");
        if (!env) return LogLevel::error;
        const std::string s(env);
        if (s == "debug") return LogLevel::debug;
        if (s == "info") return LogLevel::info;
        return LogLevel::error;
    }();
    return level;
}

static void emit(const char* tag, const std::string& msg) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "[" << tag << "] " << msg << "\n";
}

void log_error(const std::string& msg) { emit("error", msg); }

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) emit("info", msg);
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) emit("debug", msg);
}

} // namespace bathdisc
