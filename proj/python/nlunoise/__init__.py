# Copyright 2026 The nlunoise Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Noise injection, augmentation and evaluation for NLU datasets."""

from nlunoise._core import (
    DataError,
    ResourceError,
    Utterance,
    WordPieceVocab,
    alp_loss,
    augment,
    bsr_distribution,
    bsr_sample,
    dataset_stats,
    extract_spans,
    injector_names,
    intent_accuracy,
    noise,
    parse_dataset,
    preset_plan,
    search_space,
    sentence_bleu,
    slot_f1,
    wordpiece_tokenize,
    write_dataset,
)

__all__ = [
    "DataError",
    "ResourceError",
    "Utterance",
    "WordPieceVocab",
    "alp_loss",
    "augment",
    "bsr_distribution",
    "bsr_sample",
    "dataset_stats",
    "extract_spans",
    "injector_names",
    "intent_accuracy",
    "noise",
    "parse_dataset",
    "preset_plan",
    "search_space",
    "sentence_bleu",
    "slot_f1",
    "wordpiece_tokenize",
    "write_dataset",
]
