# Dify Plugin Tests
