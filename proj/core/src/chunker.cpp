#include "awe/streams.hpp"

namespace awe {

Chunker::Chunker(InstanceSource& source, std::size_t chunk_size, std::size_t num_classes)
    : source_(source), chunk_size_(chunk_size), num_classes_(num_classes) {
    if (chunk_size == 0) {
        throw std::invalid_argument("chunk size must be positive");
    }
}

std::optional<Chunk> Chunker::next() {
    if (done_) {
        return std::nullopt;
    }
    Chunk chunk;
    chunk.instances.reserve(chunk_size_);
    while (chunk.instances.size() < chunk_size_) {
        auto inst = source_.next();
        if (!inst) {
            done_ = true;
            break;
        }
        chunk.instances.push_back(std::move(*inst));
    }
    if (chunk.instances.empty()) {
        return std::nullopt;
    }
    chunk.index = next_index_++;
    chunk.partial = chunk.instances.size() < chunk_size_;
    chunk.num_classes = num_classes_ ? num_classes_ : source_.labels().size();
    return chunk;
}

}  // namespace awe
