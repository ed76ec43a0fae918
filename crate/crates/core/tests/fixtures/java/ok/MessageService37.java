package com.acme.shop;

import java.math.BigDecimal;
import java.util.ArrayList;
import java.util.HashMap;
import java.util.Map;
import java.util.stream.Collectors;

public class MessageService {
  private final Map<Long, Message> store = new HashMap<>();
  private long nextId = 1;

  public Message create(Message item) {
    long id = nextId++;
    store.put(id, item);
    return item;
  }

  public Optional<Message> find(long id) {
    return Optional.ofNullable(store.get(id));
  }

  public List<Message> findAll(Predicate<? super Message> filter) {
    return store.values().stream()
        .filter(filter)
        .collect(Collectors.toList());
  }

  public boolean delete(long id) {
    if (!store.containsKey(id)) {
      return false;
    }
    store.remove(id);
    return true;
  }

  // TODO: paging
  public int count() { return store.size(); }

  static final class Stats {
    int reads;
    int writes;

    double ratio() {
      return writes == 0 ? 0 : (double) reads / writes;
    }
  }
}
