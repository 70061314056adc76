// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
int main() { return 0; }
