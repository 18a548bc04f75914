#include "meshgnn/trainer.hpp"

namespace meshgnn {

void validate_train_config(const TrainConfig& config) {
  if (config.epochs == 0) throw ConfigError("epochs must be >= 1");
  if (!(config.lr > 0.0) || !std::isfinite(config.lr)) {
    throw ConfigError("learning rate must be a positive finite number");
  }
  if (config.batch_size != 1) {
    throw ConfigError("batch_size must be 1 (one simulation per optimizer step)");
  }
  if (config.early_stopping && !(config.early_stopping->min_delta >= 0.0)) {
    throw ConfigError("early stopping min_delta must be >= 0");
  }
}

}  // namespace meshgnn
